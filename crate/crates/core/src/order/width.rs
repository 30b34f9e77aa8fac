//! Effective width: an exhaustive checker and a certificate verifier.
//!
//! A decomposition of a ground set `S` is a partition into waist blocks
//! `S_1..S_k`, a lower part `S_<` and an upper part `S_>` such that
//!
//! 1. at least two blocks are nonempty, unless `|S| <= 1`;
//! 2. every `x` in `S_<` lies strictly below every element of some nonempty waist block;
//! 3. every `x` in `S_>` lies strictly above every element of some nonempty waist block;
//! 4. for `x` in `S_<` and `y` in `S_>` with `x <= y`, some nonempty waist block
//!    lies entirely between them;
//! 5. every block decomposes recursively with the same `k`;
//! 6. elements of distinct waist blocks are incomparable.
//!
//! Witness blocks in conditions 2 to 4 must be nonempty; with an empty block the
//! quantifier "for all y in S_i" would hold vacuously and the conditions would
//! say nothing.

use std::collections::HashMap;

use super::PartialOrder;
use crate::error::{OrderError, SizeLimitExceeded};

pub const DEFAULT_WIDTH_CAP: usize = 8;

/// A recursive waist decomposition over element ids of the original order.
///
/// `children` holds one decomposition per nonempty block, in the order waist
/// blocks, lower part, upper part. The empty decomposition certifies sets of at
/// most one element.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WaistDecomposition {
    pub waist: Vec<Vec<usize>>,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub children: Vec<WaistDecomposition>,
}

impl WaistDecomposition {
    pub fn is_trivial(&self) -> bool {
        self.waist.iter().all(Vec::is_empty)
            && self.lower.is_empty()
            && self.upper.is_empty()
            && self.children.is_empty()
    }

    fn nonempty_blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.waist
            .iter()
            .chain([&self.lower, &self.upper])
            .filter(|b| !b.is_empty())
    }
}

/// Exhaustive effective-width search with a per-subset memo.
pub struct WidthChecker<'a> {
    p: &'a PartialOrder,
    k: usize,
    memo: HashMap<u64, Option<WaistDecomposition>>,
}

impl<'a> WidthChecker<'a> {
    pub fn new(p: &'a PartialOrder, k: usize, cap: usize) -> Result<Self, OrderError> {
        assert!(k >= 1, "effective width is defined for k >= 1");
        if p.len() > cap.min(63) {
            return Err(SizeLimitExceeded {
                what: "partial order",
                size: p.len(),
                cap,
            }
            .into());
        }
        Ok(Self {
            p,
            k,
            memo: HashMap::new(),
        })
    }

    pub fn decompose_all(&mut self) -> Option<WaistDecomposition> {
        let full = (1u64 << self.p.len()) - 1;
        self.decompose(full)
    }

    fn decompose(&mut self, set: u64) -> Option<WaistDecomposition> {
        if set.count_ones() <= 1 {
            return Some(WaistDecomposition::default());
        }
        if let Some(hit) = self.memo.get(&set) {
            return hit.clone();
        }
        let elems: Vec<usize> = (0..64).filter(|&i| set >> i & 1 == 1).collect();
        // Only |S| waist blocks can be nonempty, so larger k adds nothing.
        let k = self.k.min(elems.len());
        let mut labels = vec![0usize; elems.len()];
        let found = self.search(&elems, k, &mut labels, 0, 0);
        self.memo.insert(set, found.clone());
        found
    }

    /// Labels `0..k` are waist blocks, `k` the lower part, `k + 1` the upper
    /// part. Waist labels appear in first-use order, which loses no partition.
    fn search(
        &mut self,
        elems: &[usize],
        k: usize,
        labels: &mut Vec<usize>,
        pos: usize,
        used: usize,
    ) -> Option<WaistDecomposition> {
        if pos == elems.len() {
            let cand = build(elems, labels, k);
            if !conditions_hold(self.p, &cand) {
                return None;
            }
            let mut children = Vec::new();
            for block in cand.nonempty_blocks() {
                children.push(self.decompose(mask_of(block))?);
            }
            return Some(WaistDecomposition { children, ..cand });
        }
        let x = elems[pos];
        for label in 0..k + 2 {
            if label < k && label > used {
                continue;
            }
            if label < k
                && (0..pos).any(|q| labels[q] < k && labels[q] != label && !self.inc(elems[q], x))
            {
                continue;
            }
            labels[pos] = label;
            let next_used = if label == used && label < k {
                used + 1
            } else {
                used
            };
            if let Some(d) = self.search(elems, k, labels, pos + 1, next_used) {
                return Some(d);
            }
        }
        None
    }

    fn inc(&self, a: usize, b: usize) -> bool {
        !self.p.le(a, b) && !self.p.le(b, a)
    }
}

fn mask_of(block: &[usize]) -> u64 {
    block.iter().fold(0, |m, &x| m | 1 << x)
}

fn build(elems: &[usize], labels: &[usize], k: usize) -> WaistDecomposition {
    let mut d = WaistDecomposition {
        waist: vec![Vec::new(); k],
        ..Default::default()
    };
    for (&x, &l) in elems.iter().zip(labels) {
        match l {
            l if l < k => d.waist[l].push(x),
            l if l == k => d.lower.push(x),
            _ => d.upper.push(x),
        }
    }
    d.waist.retain(|b| !b.is_empty());
    d
}

/// Conditions 1 to 4 and 6 at one node; recursion is the caller's job.
fn conditions_hold(p: &PartialOrder, d: &WaistDecomposition) -> bool {
    let size: usize = d.nonempty_blocks().map(Vec::len).sum();
    if size > 1 && d.nonempty_blocks().count() < 2 {
        return false;
    }
    let blocks: Vec<&Vec<usize>> = d.waist.iter().filter(|b| !b.is_empty()).collect();
    let below_all = |x: usize, b: &[usize]| b.iter().all(|&y| p.lt(x, y));
    let above_all = |x: usize, b: &[usize]| b.iter().all(|&y| p.lt(y, x));
    if !d
        .lower
        .iter()
        .all(|&x| blocks.iter().any(|b| below_all(x, b)))
    {
        return false;
    }
    if !d
        .upper
        .iter()
        .all(|&x| blocks.iter().any(|b| above_all(x, b)))
    {
        return false;
    }
    for &x in &d.lower {
        for &y in &d.upper {
            if p.le(x, y)
                && !blocks
                    .iter()
                    .any(|b| b.iter().all(|&z| p.le(x, z) && p.le(z, y)))
            {
                return false;
            }
        }
    }
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            for &x in a.iter() {
                for &y in b.iter() {
                    if p.le(x, y) || p.le(y, x) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether `p` has effective width at most `k`, by exhaustive search.
pub fn effective_width_at_most(p: &PartialOrder, k: usize) -> Result<bool, OrderError> {
    Ok(find_waist_decomposition(p, k, DEFAULT_WIDTH_CAP)?.is_some())
}

pub fn find_waist_decomposition(
    p: &PartialOrder,
    k: usize,
    cap: usize,
) -> Result<Option<WaistDecomposition>, OrderError> {
    Ok(WidthChecker::new(p, k, cap)?.decompose_all())
}

/// Verifies `cert` against all six conditions, recursively.
pub fn effective_width_certificate_check(
    p: &PartialOrder,
    k: usize,
    cert: &WaistDecomposition,
) -> bool {
    let ground: Vec<usize> = (0..p.len()).collect();
    check_node(p, k, &ground, cert)
}

fn check_node(p: &PartialOrder, k: usize, ground: &[usize], d: &WaistDecomposition) -> bool {
    if d.is_trivial() {
        return ground.len() <= 1;
    }
    if d.waist.len() > k {
        return false;
    }
    let mut seen: Vec<usize> = d.nonempty_blocks().flatten().copied().collect();
    seen.sort_unstable();
    let mut expect = ground.to_vec();
    expect.sort_unstable();
    if seen != expect {
        return false;
    }
    if !conditions_hold(p, d) {
        return false;
    }
    let blocks: Vec<&Vec<usize>> = d.nonempty_blocks().collect();
    blocks.len() == d.children.len()
        && blocks
            .iter()
            .zip(&d.children)
            .all(|(b, c)| check_node(p, k, b, c))
}
