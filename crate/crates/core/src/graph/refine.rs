//! Ordered partitions and equitable refinement.

use alloc::vec::Vec;

use super::bits::and_popcount;
use super::Graph;

/// Ordered partition of `0..n` into contiguous cells of `order`.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub order: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell containing each vertex.
    cell_of: Vec<u32>,
    /// Cell length, valid at cell starts.
    cell_len: Vec<u32>,
    cells: usize,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0100_0000_01b3).rotate_left(23) ^ 0x9e37_79b9_7f4a_7c15
}

impl Partition {
    pub fn unit(n: usize) -> Self {
        let mut cell_len = alloc::vec![0u32; n.max(1)];
        cell_len[0] = n as u32;
        Partition {
            order: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell_of: alloc::vec![0; n],
            cell_len,
            cells: usize::from(n > 0),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_discrete(&self) -> bool {
        self.cells == self.len()
    }

    #[cfg(test)]
    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn cell(&self, start: usize) -> &[u32] {
        &self.order[start..start + self.cell_len[start] as usize]
    }

    pub fn cell_start_of(&self, v: usize) -> usize {
        self.cell_of[v] as usize
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.len();
        let mut s = 0usize;
        core::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let cur = s;
            s += self.cell_len[cur] as usize;
            Some(cur)
        })
    }

    /// Smallest non-singleton cell, ties broken by position.
    pub fn target_cell(&self) -> Option<usize> {
        self.cell_starts().filter(|&s| self.cell_len[s] > 1).min_by_key(|&s| (self.cell_len[s], s))
    }

    /// Splits `v` off the front of its cell. Returns the start of the new
    /// singleton cell.
    pub fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v] as usize;
        let len = self.cell_len[s] as usize;
        debug_assert!(len > 1);
        let pv = self.pos[v] as usize;
        let other = self.order[s] as usize;
        self.order.swap(s, pv);
        self.pos[v] = s as u32;
        self.pos[other] = pv as u32;
        self.cell_len[s] = 1;
        self.cell_len[s + 1] = (len - 1) as u32;
        for i in s + 1..s + len {
            self.cell_of[self.order[i] as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than `self`, using
    /// `splitters` as the initial worklist. Returns a trace hash that depends
    /// only on the isomorphism type of `(graph, partition)`.
    pub fn refine(&mut self, g: &Graph, splitters: &[usize]) -> u64 {
        let n = self.len();
        let words = g.words();
        let mut in_queue = alloc::vec![false; n];
        let mut queue: Vec<usize> = Vec::new();
        for &s in splitters {
            if !in_queue[s] {
                in_queue[s] = true;
                queue.push(s);
            }
        }
        let mut trace: u64 = 0x51_7c_c1_b7_27_22_0a_95;
        let mut counts = alloc::vec![0u32; n];
        let mut wbits = alloc::vec![0u64; words];
        let mut scratch: Vec<(u32, u32)> = Vec::new();
        // Process splitters in order of position, smallest first.
        while !queue.is_empty() && !self.is_discrete() {
            let (qi, _) = queue.iter().enumerate().min_by_key(|&(_, &s)| s).unwrap();
            let w = queue.swap_remove(qi);
            in_queue[w] = false;
            let wlen = self.cell_len[w] as usize;
            trace = mix(trace, (w as u64) << 32 | wlen as u64);

            let single = if wlen == 1 { Some(self.order[w] as usize) } else { None };
            if single.is_none() {
                wbits.iter_mut().for_each(|x| *x = 0);
                for &x in &self.order[w..w + wlen] {
                    wbits[x as usize / 64] |= 1 << (x % 64);
                }
            }

            let starts: Vec<usize> = self.cell_starts().filter(|&s| self.cell_len[s] > 1).collect();
            for s in starts {
                let len = self.cell_len[s] as usize;
                let mut distinct = false;
                let mut first = None;
                for &x in &self.order[s..s + len] {
                    let c = match single {
                        Some(y) => g.has_edge(x as usize, y) as u32,
                        None => and_popcount(g.row(x as usize), &wbits) as u32,
                    };
                    counts[x as usize] = c;
                    match first {
                        None => first = Some(c),
                        Some(f) if f != c => distinct = true,
                        _ => {}
                    }
                }
                if !distinct {
                    continue;
                }
                scratch.clear();
                scratch.extend(self.order[s..s + len].iter().map(|&x| (counts[x as usize], x)));
                scratch.sort_unstable();
                let was_queued = in_queue[s];
                let mut frag_starts: Vec<(usize, usize)> = Vec::new();
                let mut i = 0;
                while i < len {
                    let c = scratch[i].0;
                    let mut j = i;
                    while j < len && scratch[j].0 == c {
                        j += 1;
                    }
                    frag_starts.push((s + i, j - i));
                    trace = mix(trace, (s as u64) << 40 | (c as u64) << 20 | (j - i) as u64);
                    i = j;
                }
                for (i, &(_, x)) in scratch.iter().enumerate() {
                    self.order[s + i] = x;
                    self.pos[x as usize] = (s + i) as u32;
                }
                for &(fs, fl) in &frag_starts {
                    self.cell_len[fs] = fl as u32;
                    for &x in &self.order[fs..fs + fl] {
                        self.cell_of[x as usize] = fs as u32;
                    }
                }
                self.cells += frag_starts.len() - 1;
                let largest = frag_starts.iter().enumerate().max_by_key(|&(i, &(_, l))| (l, usize::MAX - i)).unwrap().0;
                for (i, &(fs, _)) in frag_starts.iter().enumerate() {
                    if (was_queued || i != largest) && !in_queue[fs] {
                        in_queue[fs] = true;
                        queue.push(fs);
                    }
                }
            }
        }
        mix(trace, self.cells as u64)
    }

    /// Vertex labelling of a discrete partition: position → vertex.
    pub fn labelling(&self) -> &[u32] {
        &self.order
    }
}
