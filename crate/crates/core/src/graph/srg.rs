use super::Graph;

/// Parameters `(v, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

/// Outcome of testing a graph for strong regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    NotRegular,
    /// Regular but λ or μ is not constant.
    RegularOnly(u64),
    /// Complete or empty (including `v ≤ 1`).
    Trivial,
    /// Disjoint union of equal cliques (`μ = 0`).
    Disconnected(SrgParams),
    StronglyRegular(SrgParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum FeasibilityError {
    #[error("k(k-λ-1) = (v-k-1)μ does not hold")]
    CountingIdentity,
    #[error("eigenvalue multiplicities are not nonnegative integers")]
    Multiplicities,
    #[error("degenerate parameters (need 0 < k < v-1)")]
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eigenvalues {
    /// Integral restricted eigenvalues `r > s`.
    Integral { r: i64, s: i64 },
    /// `((λ-μ) ± √D)/2` with `D` not a square (conference graphs).
    Irrational { lambda_minus_mu: i64, discriminant: i64 },
}

/// Restricted eigenvalues and their multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spectrum {
    pub discriminant: i64,
    pub eigenvalues: Eigenvalues,
    /// Multiplicity of `r`.
    pub f: u64,
    /// Multiplicity of `s`.
    pub g: u64,
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as u64).isqrt() as i64;
    (r * r == n).then_some(r)
}

impl SrgParams {
    pub const fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    pub fn counting_identity_holds(&self) -> bool {
        self.k < self.v
            && self.lambda < self.k
            && self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }

    /// Parameters of the complementary graph.
    pub fn complement(&self) -> SrgParams {
        let (v, k, l, m) = (self.v as i64, self.k as i64, self.lambda as i64, self.mu as i64);
        SrgParams::new(v as u64, (v - k - 1) as u64, (v - 2 * k + m - 2) as u64, (v - 2 * k + l) as u64)
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.v, self.k, self.lambda, self.mu]
    }

    /// Eigenvalue data; fails if the parameters cannot belong to an SRG.
    pub fn feasibility(&self) -> Result<Spectrum, FeasibilityError> {
        if self.k == 0 || self.k + 1 >= self.v {
            return Err(FeasibilityError::Degenerate);
        }
        if !self.counting_identity_holds() {
            return Err(FeasibilityError::CountingIdentity);
        }
        let (v, k, l, m) = (self.v as i64, self.k as i64, self.lambda as i64, self.mu as i64);
        let lm = l - m;
        let disc = lm * lm + 4 * (k - m);
        match isqrt(disc) {
            Some(root) => {
                let r = (lm + root) / 2;
                let s = (lm - root) / 2;
                let num_f = -k - (v - 1) * s;
                let num_g = k + (v - 1) * r;
                let d = r - s;
                if d == 0 || num_f % d != 0 || num_g % d != 0 || num_f < 0 || num_g < 0 {
                    return Err(FeasibilityError::Multiplicities);
                }
                Ok(Spectrum {
                    discriminant: disc,
                    eigenvalues: Eigenvalues::Integral { r, s },
                    f: (num_f / d) as u64,
                    g: (num_g / d) as u64,
                })
            }
            None => {
                // Irrational eigenvalues force f = g and 2k + (v-1)(λ-μ) = 0.
                if (v - 1) % 2 != 0 || 2 * k + (v - 1) * lm != 0 {
                    return Err(FeasibilityError::Multiplicities);
                }
                let f = ((v - 1) / 2) as u64;
                Ok(Spectrum {
                    discriminant: disc,
                    eigenvalues: Eigenvalues::Irrational { lambda_minus_mu: lm, discriminant: disc },
                    f,
                    g: f,
                })
            }
        }
    }
}

impl core::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

pub(super) fn classify(g: &Graph) -> Regularity {
    let v = g.order();
    let Some(k) = g.is_regular() else {
        return Regularity::NotRegular;
    };
    if k == 0 || k + 1 >= v {
        return Regularity::Trivial;
    }
    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for i in 0..v {
        for j in i + 1..v {
            let c = g.common_neighbours(i, j);
            let slot = if g.has_edge(i, j) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return Regularity::RegularOnly(k as u64),
                _ => {}
            }
        }
    }
    let p = SrgParams::new(v as u64, k as u64, lambda.unwrap_or(0) as u64, mu.unwrap_or(0) as u64);
    if p.mu == 0 {
        Regularity::Disconnected(p)
    } else {
        Regularity::StronglyRegular(p)
    }
}
