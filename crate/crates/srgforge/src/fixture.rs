//! Group fixture files and manifests.
//!
//! A `.grp` file holds `degree N` followed by one generator per line in
//! 1-based disjoint-cycle notation. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use srgforge_core::action::TransitiveAction;
use srgforge_core::perm::{Permutation, PermutationGroup};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("manifest {path}: {source}")]
    Manifest { path: PathBuf, source: toml::de::Error },
    #[error("{row}: {what} is {got}, manifest expects {expected}")]
    Mismatch { row: String, what: &'static str, got: String, expected: String },
    #[error("{row}: not a subgroup of the ambient group")]
    NotSubgroup { row: String },
    #[error("{row}: {message}")]
    Invalid { row: String, message: String },
}

/// Parses one generator in cycle notation, e.g. `(1,2,3)(4,5)` or `(1 2)`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, String> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| format!("expected '(' at {rest:?}"))?;
        let end = body.find(')').ok_or("unclosed cycle")?;
        let mut cycle = Vec::new();
        for tok in body[..end].split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let p: usize = tok.parse().map_err(|_| format!("bad point {tok:?}"))?;
            if p == 0 || p > degree {
                return Err(format!("point {p} outside 1..={degree}"));
            }
            cycle.push(p - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = body[end + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| e.to_string())
}

/// Parses the contents of a `.grp` file.
pub fn parse_group_text(text: &str, path: &Path) -> Result<(usize, Vec<Permutation>), FixtureError> {
    let err = |line: usize, message: String| FixtureError::Parse { path: path.into(), line, message };
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .and_then(|s| s.trim().parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| err(i + 1, "expected `degree N`".into()))?;
                degree = Some(n);
            }
            Some(n) => gens.push(parse_cycles(line, n).map_err(|m| err(i + 1, m))?),
        }
    }
    let degree = degree.ok_or_else(|| err(0, "missing `degree` line".into()))?;
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    Ok((degree, gens))
}

pub fn read_group(path: &Path) -> Result<PermutationGroup, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.into(), source })?;
    let (degree, gens) = parse_group_text(&text, path)?;
    PermutationGroup::new(degree, gens).map_err(|e| FixtureError::Parse {
        path: path.into(),
        line: 0,
        message: e.to_string(),
    })
}

/// Writes generators in the `.grp` format, with optional comment lines.
pub fn format_group(degree: usize, gens: &[Permutation], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "degree {degree}");
    for g in gens {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// A row of the subgroup table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupEntry {
    pub name: String,
    #[serde(default)]
    pub structure: String,
    pub file: PathBuf,
    pub order: u128,
    pub index: usize,
    pub rank: usize,
    pub primitive: bool,
}

/// An automorphism subgroup and the collapse it is expected to give.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CollapseEntry {
    pub name: String,
    /// Subgroup whose coset graph is collapsed.
    pub subgroup: String,
    /// Parameters of the source graph, selecting it among that subgroup's graphs.
    pub params: [u64; 4],
    /// Generators as elements of the ambient group.
    pub file: PathBuf,
    pub structure: String,
    pub order: u128,
    pub orbit_length: u64,
    pub x: u64,
    pub y: u64,
    pub expected: [u64; 4],
    /// Subgroup whose graph (with the expected parameters) the collapse must
    /// be isomorphic to; `other.toml#NAME` refers to another manifest.
    #[serde(default)]
    pub isomorphic_to: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub group: PathBuf,
    pub order: u128,
    #[serde(rename = "subgroup", default)]
    pub subgroups: Vec<SubgroupEntry>,
    /// Parameter multiset of the expected classification.
    #[serde(default)]
    pub expected_srgs: Vec<[u64; 4]>,
    #[serde(rename = "collapse", default)]
    pub collapses: Vec<CollapseEntry>,
}

/// A subgroup row after validation.
#[derive(Debug, Clone)]
pub struct LoadedSubgroup {
    pub entry: SubgroupEntry,
    pub group: PermutationGroup,
}

#[derive(Debug, Clone)]
pub struct LoadedCollapse {
    pub entry: CollapseEntry,
    pub group: PermutationGroup,
}

/// A manifest with every file read and every expectation verified.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub manifest: Manifest,
    pub root: PathBuf,
    pub group: PermutationGroup,
    pub subgroups: Vec<LoadedSubgroup>,
    pub collapses: Vec<LoadedCollapse>,
}

impl Fixtures {
    pub fn subgroup(&self, name: &str) -> Option<&LoadedSubgroup> {
        self.subgroups.iter().find(|s| s.entry.name == name)
    }
}

fn check<T: PartialEq + ToString>(row: &str, what: &'static str, got: T, expected: T) -> Result<(), FixtureError> {
    if got == expected {
        Ok(())
    } else {
        Err(FixtureError::Mismatch { row: row.into(), what, got: got.to_string(), expected: expected.to_string() })
    }
}

pub fn read_manifest(path: &Path) -> Result<Manifest, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.into(), source })?;
    toml::from_str(&text).map_err(|source| FixtureError::Manifest { path: path.into(), source })
}

/// Checks order, index, rank and primitivity of one subgroup row.
pub fn validate_subgroup(
    group: &PermutationGroup,
    entry: &SubgroupEntry,
    sub: &PermutationGroup,
) -> Result<(), FixtureError> {
    let row = entry.name.as_str();
    if sub.degree() != group.degree() || !group.contains_group(sub).unwrap_or(false) {
        return Err(FixtureError::NotSubgroup { row: row.into() });
    }
    check(row, "order", sub.order(), entry.order)?;
    check(row, "index", group.order() / sub.order(), entry.index as u128)?;
    let act = TransitiveAction::on_cosets(group, sub)
        .map_err(|e| FixtureError::Invalid { row: row.into(), message: e.to_string() })?;
    check(row, "rank", act.rank(), entry.rank)?;
    check(row, "primitivity", act.is_primitive(), entry.primitive)?;
    Ok(())
}

/// Loads `manifest` and verifies every row; the first mismatch is an error.
pub fn load_fixtures(manifest_path: &Path) -> Result<Fixtures, FixtureError> {
    let manifest = read_manifest(manifest_path)?;
    let root = manifest_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let group = read_group(&root.join(&manifest.group))?;
    check(&manifest.name, "order", group.order(), manifest.order)?;
    let mut subgroups = Vec::new();
    for entry in &manifest.subgroups {
        let sub = read_group(&root.join(&entry.file))?;
        validate_subgroup(&group, entry, &sub)?;
        subgroups.push(LoadedSubgroup { entry: entry.clone(), group: sub });
    }
    let mut collapses = Vec::new();
    for entry in &manifest.collapses {
        let sub = read_group(&root.join(&entry.file))?;
        if sub.degree() != group.degree() || !group.contains_group(&sub).unwrap_or(false) {
            return Err(FixtureError::NotSubgroup { row: entry.name.clone() });
        }
        check(&entry.name, "order", sub.order(), entry.order)?;
        if !manifest.subgroups.iter().any(|s| s.name == entry.subgroup) {
            return Err(FixtureError::Invalid {
                row: entry.name.clone(),
                message: format!("unknown subgroup {}", entry.subgroup),
            });
        }
        collapses.push(LoadedCollapse { entry: entry.clone(), group: sub });
    }
    Ok(Fixtures { manifest, root, group, subgroups, collapses })
}

/// Fixtures for a group and subgroup files without a manifest: each row's
/// expectations are whatever is computed, named after the file stem.
pub fn fixtures_from_files(group_path: &Path, subgroup_paths: &[PathBuf]) -> Result<Fixtures, FixtureError> {
    let group = read_group(group_path)?;
    let stem = |p: &Path| p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut subgroups = Vec::new();
    for path in subgroup_paths {
        let sub = read_group(path)?;
        let name = stem(path);
        if sub.degree() != group.degree() || !group.contains_group(&sub).unwrap_or(false) {
            return Err(FixtureError::NotSubgroup { row: name });
        }
        let act = TransitiveAction::on_cosets(&group, &sub)
            .map_err(|e| FixtureError::Invalid { row: name.clone(), message: e.to_string() })?;
        let entry = SubgroupEntry {
            name,
            structure: String::new(),
            file: path.clone(),
            order: sub.order(),
            index: act.degree(),
            rank: act.rank(),
            primitive: act.is_primitive(),
        };
        subgroups.push(LoadedSubgroup { entry, group: sub });
    }
    let manifest = Manifest {
        name: stem(group_path),
        group: group_path.to_path_buf(),
        order: group.order(),
        subgroups: subgroups.iter().map(|s| s.entry.clone()).collect(),
        expected_srgs: Vec::new(),
        collapses: Vec::new(),
    };
    let root = group_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    Ok(Fixtures { manifest, root, group, subgroups, collapses: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cycles() {
        let p = parse_cycles("(1,2,3)(4,5)", 6).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(parse_cycles("(1 2)", 3).unwrap().to_string(), "(1,2)");
        assert_eq!(parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert!(parse_cycles("(1,4)", 3).is_err());
        assert!(parse_cycles("(1,2", 3).is_err());
        assert!(parse_cycles("(1,2)(2,3)", 3).is_err());
    }

    #[test]
    fn parses_group_file() {
        let text = "# A8\ndegree 8\n(1,2,3)\n\n(2,3,4,5,6,7,8) # long cycle\n";
        let (n, gens) = parse_group_text(text, Path::new("a8.grp")).unwrap();
        assert_eq!(n, 8);
        assert_eq!(gens.len(), 2);
        let g = PermutationGroup::new(n, gens.clone()).unwrap();
        assert_eq!(g.order(), 20160);
        let again = parse_group_text(&format_group(n, &gens, &[]), Path::new("x")).unwrap();
        assert_eq!(again.1, gens);
        assert!(parse_group_text("(1,2)\n", Path::new("x")).is_err());
    }
}
