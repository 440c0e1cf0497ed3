//! Young diagrams inside the `n x n` square.
//!
//! Cells are addressed as `(row, column)` pairs, both starting at 1, in
//! English notation: row 1 is the top row and every row is left-justified.
//! A partition is stored without trailing zeros, so structural equality is
//! equality of diagrams.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Young diagram, given by its row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from row lengths, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The rectangle with `rows` rows of length `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition { parts: vec![cols; rows] }
    }

    /// The hook `(arm, 1^leg)`; `arm` counts the corner cell.
    pub fn hook(arm: usize, leg: usize) -> Self {
        assert!(arm > 0, "a hook needs a corner cell");
        let mut parts = vec![arm];
        parts.extend(std::iter::repeat_n(1, leg));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Length of row `row` (1-based); zero past the last row.
    pub fn row(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Length of column `col` (1-based).
    pub fn column(&self, col: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= col).count()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.row(row) >= col
    }

    pub fn fits_in(&self, n: usize) -> bool {
        self.parts.len() <= n && self.parts.first().is_none_or(|&p| p <= n)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)))
    }

    /// The conjugate diagram.
    pub fn transpose(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=width).map(|c| self.column(c)).collect() }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.transpose()
    }

    /// The complement inside the `n x n` square, rotated by a half turn:
    /// row `i` of the result has `n - λ_{n+1-i}` boxes.
    pub fn complement(&self, n: usize) -> Result<Self> {
        self.check_fits(n)?;
        let parts = (1..=n).map(|i| n - self.row(n + 1 - i)).collect();
        Partition::new(parts)
    }

    pub(crate) fn check_fits(&self, n: usize) -> Result<()> {
        if self.fits_in(n) {
            Ok(())
        } else {
            Err(Error::NotInSquare { partition: self.to_string(), n })
        }
    }

    /// Boxes strictly above and strictly below the main diagonal.
    pub fn diagonal_balance(&self) -> (usize, usize) {
        self.cells().fold((0, 0), |(above, below), (i, j)| match j.cmp(&i) {
            std::cmp::Ordering::Greater => (above + 1, below),
            std::cmp::Ordering::Less => (above, below + 1),
            std::cmp::Ordering::Equal => (above, below),
        })
    }

    /// Principal hooks taken along the main diagonal, outermost first.
    pub fn hook_decomposition(&self) -> HookDecomposition {
        let hooks = (1..)
            .take_while(|&k| self.row(k) >= k)
            .map(|k| Hook { arm: self.row(k) - k + 1, leg: self.column(k) - k })
            .collect();
        HookDecomposition { hooks }
    }

    /// The diagram with exactly these cells, if they form one.
    pub fn from_cells(cells: &BTreeSet<(usize, usize)>) -> Option<Self> {
        let rows = cells.iter().map(|&(i, _)| i).max().unwrap_or(0);
        let parts: Vec<usize> = (1..=rows).map(|i| cells.range((i, 0)..(i + 1, 0)).count()).collect();
        let lambda = Partition::new(parts).ok()?;
        (lambda.cells().collect::<BTreeSet<_>>() == *cells).then_some(lambda)
    }

    /// All partitions fitting in the `n x n` square, ordered by index set.
    pub fn all_in_square(n: usize) -> Vec<Partition> {
        IndexSet::all(n).iter().map(IndexSet::to_partition).collect()
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts; the empty partition renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let text: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = parse_list(s)?;
        Partition::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        value.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse { input: s.to_string(), reason: e.to_string() }))
        .collect()
}

/// An `n`-element subset of `{1, ..., 2n}`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexSet {
    n: usize,
    elements: Vec<usize>,
}

impl IndexSet {
    pub fn new(mut elements: Vec<usize>, n: usize) -> Result<Self> {
        let bad = |reason: String| Error::InvalidIndexSet { n, reason };
        elements.sort_unstable();
        if elements.len() != n {
            return Err(bad(format!("expected {n} elements, got {}", elements.len())));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(bad("repeated element".into()));
        }
        if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > 2 * n) {
            return Err(bad(format!("{e} is outside 1..={}", 2 * n)));
        }
        Ok(IndexSet { n, elements })
    }

    /// Parses a comma-separated list such as `1,2,4`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        IndexSet::new(parse_list(s)?, n)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// All `n`-subsets of `{1, ..., 2n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(start: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
            if current.len() == n {
                out.push(IndexSet { n, elements: current.clone() });
                return;
            }
            for e in start..=2 * n {
                if 2 * n - e + 1 < n - current.len() {
                    break;
                }
                current.push(e);
                rec(e + 1, n, current, out);
                current.pop();
            }
        }
        rec(1, n, &mut current, &mut out);
        out
    }

    /// The partition above the lattice path from the upper right corner to
    /// the lower left corner whose vertical steps carry the labels in `self`.
    pub fn to_partition(&self) -> Partition {
        let mut horizontal = 0;
        let mut rows = Vec::with_capacity(self.n);
        for step in 1..=2 * self.n {
            if self.contains(step) {
                rows.push(self.n - horizontal);
            } else {
                horizontal += 1;
            }
        }
        Partition::new(rows).expect("lattice path rows are weakly decreasing")
    }

    /// Compares by largest element first (colexicographic order).
    pub fn colex_cmp(&self, other: &IndexSet) -> std::cmp::Ordering {
        self.elements.iter().rev().cmp(other.elements.iter().rev())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.elements.iter().map(usize::to_string).collect();
        f.write_str(&text.join(","))
    }
}

/// Inverse of [`IndexSet::to_partition`].
pub fn partition_to_indexset(lambda: &Partition, n: usize) -> Result<IndexSet> {
    lambda.check_fits(n)?;
    // Row r ends after n - λ_r horizontal steps, so its vertical step is
    // step number r + (n - λ_r).
    let elements = (1..=n).map(|r| r + n - lambda.row(r)).collect();
    IndexSet::new(elements, n)
}

pub fn indexset_to_partition(set: &IndexSet) -> Partition {
    set.to_partition()
}

/// A set of cells of the square, not necessarily a skew shape.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkewRegion {
    cells: BTreeSet<(usize, usize)>,
}

impl SkewRegion {
    pub fn from_cells(cells: impl IntoIterator<Item = (usize, usize)>) -> Self {
        SkewRegion { cells: cells.into_iter().collect() }
    }

    /// The cells of `outer` that are not cells of `inner`.
    pub fn difference(outer: &Partition, inner: &Partition) -> Self {
        SkewRegion::from_cells(outer.cells().filter(|&(i, j)| !inner.contains_cell(i, j)))
    }

    pub fn cells(&self) -> &BTreeSet<(usize, usize)> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Longest run `(i, j), (i+1, j+1), ...` of cells in the region.
    pub fn maxdiag(&self) -> usize {
        self.cells
            .iter()
            .filter(|&&(i, j)| !(i > 1 && j > 1 && self.cells.contains(&(i - 1, j - 1))))
            .map(|&(i, j)| (0..).take_while(|&k| self.cells.contains(&(i + k, j + k))).count())
            .max()
            .unwrap_or(0)
    }
}

/// `maxdiag(outer \ inner)`.
pub fn maxdiag(outer: &Partition, inner: &Partition) -> usize {
    SkewRegion::difference(outer, inner).maxdiag()
}

/// A principal hook: `arm` boxes in its row (corner included) and `leg`
/// boxes below the corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hook {
    pub arm: usize,
    pub leg: usize,
}

impl Hook {
    /// The hook as a partition `(arm, 1^leg)`.
    pub fn to_partition(self) -> Partition {
        Partition::hook(self.arm, self.leg)
    }

    pub fn size(self) -> usize {
        self.arm + self.leg
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HookDecomposition {
    pub hooks: Vec<Hook>,
}

impl HookDecomposition {
    pub fn len(&self) -> usize {
        self.hooks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hooks.is_empty()
    }

    pub fn size(&self) -> usize {
        self.hooks.iter().map(|h| h.size()).sum()
    }

    /// Consecutive hooks shrink strictly in both arm and leg.
    pub fn is_strictly_nested(&self) -> bool {
        self.hooks.windows(2).all(|w| w[1].arm < w[0].arm && w[1].leg < w[0].leg)
    }

    /// Every hook has more arm than leg.
    pub fn is_arm_dominant(&self) -> bool {
        self.hooks.iter().all(|h| h.arm > h.leg)
    }

    /// Cells obtained by placing hook `k` with its corner at `(k, k)`.
    pub fn reassemble(&self) -> BTreeSet<(usize, usize)> {
        let mut cells = BTreeSet::new();
        for (idx, h) in self.hooks.iter().enumerate() {
            let k = idx + 1;
            cells.extend((0..h.arm).map(|a| (k, k + a)));
            cells.extend((1..=h.leg).map(|b| (k + b, k)));
        }
        cells
    }
}

/// Number of standard Young tableaux of the staircase `(n, n-1, ..., 1)`,
/// by the hook length formula.
pub fn staircase_syt_count(n: usize) -> BigUint {
    let staircase = Partition::new((1..=n).rev().collect()).expect("staircase is a partition");
    syt_count(&staircase)
}

/// Hook length formula for an arbitrary shape.
pub fn syt_count(shape: &Partition) -> BigUint {
    let mut numerator = BigUint::one();
    for k in 1..=shape.size() {
        numerator *= k;
    }
    let mut denominator = BigUint::one();
    for (i, j) in shape.cells() {
        denominator *= shape.row(i) - j + shape.column(j) - i + 1;
    }
    numerator / denominator
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn indexset_examples() {
        let staircase = IndexSet::parse("1,3,5", 3).unwrap().to_partition();
        assert_eq!(staircase, p(&[3, 2, 1]));
        for n in 1..=5 {
            let top = IndexSet::new((n + 1..=2 * n).collect(), n).unwrap();
            assert!(top.to_partition().is_empty());
        }
        // 124 is the coordinate labelled by (3,3,2), 125 by (3,3,1).
        assert_eq!(IndexSet::parse("1,2,4", 3).unwrap().to_partition(), p(&[3, 3, 2]));
        assert_eq!(IndexSet::parse("1,2,5", 3).unwrap().to_partition(), p(&[3, 3, 1]));
        assert_eq!(IndexSet::parse("1,5,6", 3).unwrap().to_partition(), p(&[3]));
        assert_eq!(IndexSet::parse("1,4,5", 3).unwrap().to_partition(), p(&[3, 1, 1]));
    }

    #[test]
    fn indexset_rejects_malformed() {
        assert!(IndexSet::parse("1,2", 3).is_err());
        assert!(IndexSet::parse("1,2,7", 3).is_err());
        assert!(IndexSet::parse("1,1,2", 3).is_err());
        assert!(IndexSet::parse("0,1,2", 3).is_err());
        assert!(IndexSet::parse("1,x,2", 3).is_err());
    }

    #[test]
    fn partition_rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 1, 1]).transpose(), p(&[3, 1, 1]));
        assert_eq!(p(&[3, 3]).transpose(), p(&[2, 2, 2]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(p(&[2]).complement(3).unwrap(), p(&[3, 3, 1]));
        assert_eq!(p(&[1]).complement(3).unwrap(), p(&[3, 3, 2]));
        assert!(Partition::rectangle(4, 4).complement(4).unwrap().is_empty());
        assert!(p(&[4]).complement(3).is_err());
        assert!(p(&[1, 1, 1, 1]).complement(3).is_err());
    }

    #[test]
    fn maxdiag_examples() {
        assert_eq!(maxdiag(&p(&[3, 3, 3]), &p(&[3, 3, 2])), 1);
        assert_eq!(SkewRegion::default().maxdiag(), 0);
        assert_eq!(maxdiag(&Partition::rectangle(5, 5), &Partition::empty()), 5);
        // region need not be a skew shape
        assert_eq!(maxdiag(&p(&[1, 1]), &p(&[2])), 1);
    }

    #[test]
    fn hook_decomposition_examples() {
        let hooks = |q: &[usize]| -> Vec<(usize, usize)> {
            p(q).hook_decomposition().hooks.iter().map(|h| (h.arm, h.leg)).collect()
        };
        assert_eq!(hooks(&[3, 3, 1]), vec![(3, 2), (2, 0)]);
        assert_eq!(hooks(&[3, 3, 2]), vec![(3, 2), (2, 1)]);
        assert_eq!(hooks(&[1]), vec![(1, 0)]);
        assert!(Partition::empty().hook_decomposition().is_empty());
        assert_eq!(Hook { arm: 3, leg: 2 }.to_partition(), p(&[3, 1, 1]));
    }

    #[test]
    fn balance_examples() {
        assert_eq!(p(&[2]).diagonal_balance(), (1, 0));
        // self-conjugate shapes are balanced
        assert_eq!(p(&[3, 2, 1]).diagonal_balance(), (2, 2));
        assert_eq!(p(&[1, 1]).diagonal_balance(), (0, 1));
    }

    #[test]
    fn syt_counts() {
        assert_eq!(staircase_syt_count(1), BigUint::from(1u32));
        assert_eq!(staircase_syt_count(3), BigUint::from(16u32));
        assert_eq!(staircase_syt_count(4), BigUint::from(768u32));
        assert_eq!(syt_count(&p(&[2, 1])), BigUint::from(2u32));
    }

    #[test]
    fn exhaustive_round_trips() {
        for n in 1..=5 {
            let all = IndexSet::all(n);
            assert_eq!(all.len(), binomial(2 * n, n));
            for set in &all {
                let lambda = set.to_partition();
                assert!(lambda.fits_in(n));
                assert_eq!(&partition_to_indexset(&lambda, n).unwrap(), set);
                assert_eq!(lambda.transpose().transpose(), lambda);
                let c = lambda.complement(n).unwrap();
                assert_eq!(c.complement(n).unwrap(), lambda);
                assert_eq!(c.size() + lambda.size(), n * n);
            }
        }
    }

    #[test]
    fn hooks_reassemble_exhaustively() {
        for n in 1..=5 {
            for lambda in Partition::all_in_square(n) {
                let d = lambda.hook_decomposition();
                assert!(d.is_strictly_nested());
                assert_eq!(d.size(), lambda.size());
                let cells: BTreeSet<_> = lambda.cells().collect();
                assert_eq!(d.reassemble(), cells);
            }
        }
    }

    #[test]
    fn maxdiag_bounds() {
        for n in 1..=4 {
            let all = Partition::all_in_square(n);
            for mu in &all {
                assert_eq!(maxdiag(mu, &Partition::empty()), SkewRegion::from_cells(mu.cells()).maxdiag());
                for lambda in &all {
                    assert!(maxdiag(mu, lambda) <= n);
                }
            }
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[3, 3, 1]).to_string(), "3,3,1");
        assert_eq!(Partition::empty().to_string(), "0");
        assert_eq!("3,3,1".parse::<Partition>().unwrap(), p(&[3, 3, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(IndexSet::parse("4,2,1", 3).unwrap().to_string(), "1,2,4");
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
