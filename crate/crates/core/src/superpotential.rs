//! The staircase poset, its antichains and linear extensions, and the
//! superpotential polytope built two ways: by tropicalizing the Laurent
//! superpotential term by term, and as the chain polytope of the poset.
//!
//! Poset elements `b(i,j)` with `1 <= i <= j <= n` are stored in
//! lexicographic order, which is also the coordinate order `A11, A12, ...`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{integer_point, Inequality, RationalPolytopeH, RationalPolytopeV};

/// A poset element `b(i,j)` or coordinate `A(i,j)`, as `(i, j)`.
pub type Cell = (usize, usize);

/// Largest `n` for which linear extensions are counted.
pub const LINEAR_EXTENSION_MAX: usize = 8;

/// The staircase poset: `b(i,j)` covers `b(i+1,j+1)` and `b(i,j+1)`.
#[derive(Clone, Debug)]
pub struct StaircasePoset {
    n: usize,
    elements: Vec<Cell>,
    /// `below[x]` has bit `y` set when `y <= x`.
    below: Vec<u128>,
}

/// Closed form of the order: `b(k,l) <= b(i,j)` iff `k >= i` and
/// `l - k >= j - i`.
fn leq_cells(lower: Cell, upper: Cell) -> bool {
    lower.0 >= upper.0 && lower.1 - lower.0 >= upper.1 - upper.0
}

impl StaircasePoset {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall { n, min: 1 });
        }
        if n * (n + 1) / 2 > 128 {
            return Err(Error::SizeLimit { what: "the staircase poset", n, max: 15 });
        }
        let elements: Vec<Cell> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
        let below = elements
            .iter()
            .map(|&x| {
                elements.iter().enumerate().filter(|&(_, &y)| leq_cells(y, x)).fold(0u128, |m, (k, _)| m | 1 << k)
            })
            .collect();
        Ok(StaircasePoset { n, elements, below })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Cell] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self, cell: Cell) -> Option<usize> {
        self.elements.binary_search(&cell).ok()
    }

    /// `x <= y` by element index.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Cover relations as `(upper, lower)` cells.
    pub fn covers(&self) -> Vec<(Cell, Cell)> {
        let n = self.n;
        let mut out = Vec::new();
        for &(i, j) in &self.elements {
            if j < n {
                out.push(((i, j), (i + 1, j + 1)));
                out.push(((i, j), (i, j + 1)));
            }
        }
        out.retain(|&(_, (i, j))| i <= j && j <= n);
        out.sort();
        out
    }

    /// Maximal chains, each listed from the bottom element to `b(1,1)`.
    pub fn maximal_chains(&self) -> Vec<Vec<Cell>> {
        let covers = self.covers();
        let mut out = Vec::new();
        let mut stack = vec![vec![(1, 1)]];
        while let Some(chain) = stack.pop() {
            let top = *chain.last().expect("chains are nonempty");
            let next: Vec<Cell> = covers.iter().filter(|(u, _)| *u == top).map(|&(_, l)| l).collect();
            if next.is_empty() {
                let mut c = chain.clone();
                c.reverse();
                out.push(c);
            }
            for l in next {
                let mut c = chain.clone();
                c.push(l);
                stack.push(c);
            }
        }
        out.sort();
        out
    }

    pub fn is_antichain(&self, cells: &[Cell]) -> bool {
        let Some(idx) = cells.iter().map(|&c| self.index(c)).collect::<Option<Vec<_>>>() else { return false };
        idx.iter().enumerate().all(|(a, &x)| idx[a + 1..].iter().all(|&y| x != y && !self.comparable(x, y)))
    }

    /// Mask of the down-set generated by `cells`.
    fn ideal_mask(&self, cells: &[Cell]) -> u128 {
        cells.iter().filter_map(|&c| self.index(c)).fold(0, |m, x| m | self.below[x])
    }
}

pub fn build_poset(n: usize) -> Result<StaircasePoset> {
    StaircasePoset::new(n)
}

/// A set of pairwise incomparable poset elements, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Antichain {
    members: Vec<Cell>,
}

impl Antichain {
    pub fn new(poset: &StaircasePoset, mut members: Vec<Cell>) -> Result<Self> {
        members.sort();
        members.dedup();
        if !poset.is_antichain(&members) {
            return Err(Error::NotAntichain(members));
        }
        Ok(Antichain { members })
    }

    pub fn empty() -> Self {
        Antichain { members: Vec::new() }
    }

    pub fn members(&self) -> &[Cell] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The 0/1 vector of the antichain in the lexicographic coordinates.
    pub fn indicator(&self, poset: &StaircasePoset) -> Vec<i64> {
        poset.elements.iter().map(|c| i64::from(self.members.contains(c))).collect()
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.members.iter().map(|&(i, j)| format!("b{i}{j}")).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// All antichains, ordered by size and then lexicographically.
pub fn enumerate_antichains(poset: &StaircasePoset) -> Vec<Antichain> {
    fn extend(poset: &StaircasePoset, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Antichain>) {
        out.push(Antichain { members: chosen.iter().map(|&x| poset.elements[x]).collect() });
        for x in start..poset.len() {
            if chosen.iter().all(|&y| !poset.comparable(x, y)) {
                chosen.push(x);
                extend(poset, x + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(poset, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    out
}

/// Catalan number `C_m`.
pub fn catalan(m: usize) -> BigUint {
    // C_m = binom(2m, m) / (m + 1)
    let mut c = BigUint::one();
    for k in 0..m {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// A Dyck path of `2n + 2` steps, stored as the heights at `0..=2n+2`.
///
/// The poset is drawn as a tilted staircase: `b(i,j)` is a box at column
/// `j - 2i + n + 2` whose top sits at height `n + 2 - j`. The path of an
/// antichain runs just above the boxes of its down-set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DyckPath {
    heights: Vec<usize>,
}

impl DyckPath {
    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Steps as a word in `U` and `D`.
    pub fn word(&self) -> String {
        self.heights.windows(2).map(|w| if w[1] > w[0] { 'U' } else { 'D' }).collect()
    }

    pub fn is_valid(&self) -> bool {
        self.heights.first() == Some(&0)
            && self.heights.last() == Some(&0)
            && self.heights.windows(2).all(|w| w[0].abs_diff(w[1]) == 1)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

fn box_column(n: usize, (i, j): Cell) -> usize {
    j + n + 2 - 2 * i
}

fn box_top(n: usize, (_, j): Cell) -> usize {
    n + 2 - j
}

pub fn antichain_to_dyck(poset: &StaircasePoset, a: &Antichain) -> DyckPath {
    let n = poset.n;
    let mut heights: Vec<usize> = (0..=2 * n + 2).map(|c| c % 2).collect();
    let ideal = poset.ideal_mask(&a.members);
    for (k, &cell) in poset.elements.iter().enumerate() {
        if ideal >> k & 1 == 1 {
            let c = box_column(n, cell);
            heights[c] = heights[c].max(box_top(n, cell));
        }
    }
    DyckPath { heights }
}

/// Inverse of [`antichain_to_dyck`]: the maximal boxes under the path.
pub fn dyck_to_antichain(poset: &StaircasePoset, path: &DyckPath) -> Result<Antichain> {
    let n = poset.n;
    if path.heights.len() != 2 * n + 3 || !path.is_valid() {
        return Err(Error::Parse { input: path.word(), reason: format!("not a Dyck path of length {}", 2 * n + 2) });
    }
    let under: Vec<usize> = (0..poset.len())
        .filter(|&k| {
            let cell = poset.elements[k];
            path.heights[box_column(n, cell)] >= box_top(n, cell)
        })
        .collect();
    let maximal = under
        .iter()
        .filter(|&&x| under.iter().all(|&y| y == x || !poset.leq(x, y)))
        .map(|&x| poset.elements[x])
        .collect();
    Antichain::new(poset, maximal)
}

/// Number of linear extensions, by dynamic programming over down-sets.
pub fn linear_extension_count(poset: &StaircasePoset) -> Result<BigUint> {
    if poset.n > LINEAR_EXTENSION_MAX {
        return Err(Error::SizeLimit { what: "linear extension counting", n: poset.n, max: LINEAR_EXTENSION_MAX });
    }
    let full: u128 = if poset.len() == 128 { u128::MAX } else { (1u128 << poset.len()) - 1 };
    let mut layer: HashMap<u128, BigUint> = HashMap::from([(0, BigUint::one())]);
    for _ in 0..poset.len() {
        let mut next: HashMap<u128, BigUint> = HashMap::new();
        for (ideal, count) in &layer {
            for x in 0..poset.len() {
                let strictly_below = poset.below[x] & !(1 << x);
                if ideal >> x & 1 == 0 && strictly_below & !ideal == 0 {
                    *next.entry(ideal | 1 << x).or_insert_with(BigUint::zero) += count;
                }
            }
        }
        layer = next;
    }
    Ok(layer.remove(&full).unwrap_or_default())
}

/// One term of the superpotential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SuperpotentialTerm {
    /// The coordinate `a(i,j)`.
    Linear { cell: Cell },
    /// `q` divided by one variable per column; `shape` is the strict
    /// partition the term comes from.
    Quantum { shape: Vec<usize>, denominator: Vec<Cell> },
}

impl fmt::Display for SuperpotentialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperpotentialTerm::Linear { cell: (i, j) } => write!(f, "a{i}{j}"),
            SuperpotentialTerm::Quantum { denominator, .. } => {
                let vars: Vec<String> = denominator.iter().map(|(i, j)| format!("a{i}{j}")).collect();
                write!(f, "q/({})", vars.join(" "))
            }
        }
    }
}

/// Strict partitions with largest part `n`, ordered by their parts.
fn strict_shapes(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..1usize << (n - 1))
        .map(|mask| {
            let mut parts = vec![n];
            parts.extend((1..n).rev().filter(|&p| mask >> (p - 1) & 1 == 1));
            parts
        })
        .collect();
    out.sort();
    out
}

/// Right-justify `shape` in the staircase and take, in each column `j`, the
/// lowest row `i` it reaches.
fn quantum_denominator(n: usize, shape: &[usize]) -> Vec<Cell> {
    (1..=n).map(|j| (shape.iter().filter(|&&p| p + j > n).count(), j)).collect()
}

/// All terms: the linear ones in lexicographic order, then the quantum
/// ones ordered by their strict partition.
pub fn build_superpotential(n: usize) -> Result<Vec<SuperpotentialTerm>> {
    let poset = StaircasePoset::new(n)?;
    let mut terms: Vec<SuperpotentialTerm> =
        poset.elements.iter().map(|&cell| SuperpotentialTerm::Linear { cell }).collect();
    for shape in strict_shapes(n) {
        let denominator = quantum_denominator(n, &shape);
        terms.push(SuperpotentialTerm::Quantum { shape, denominator });
    }
    Ok(terms)
}

/// Renders the superpotential as a sum of terms.
pub fn format_superpotential(terms: &[SuperpotentialTerm]) -> String {
    terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
}

/// `constant + sum coefficients * A(i,j) >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalInequality {
    pub constant: i64,
    pub coefficients: Vec<(Cell, i64)>,
}

impl TropicalInequality {
    pub fn to_row(&self, poset: &StaircasePoset) -> Inequality {
        let mut coeffs = vec![0; poset.len()];
        for &(cell, c) in &self.coefficients {
            coeffs[poset.index(cell).expect("cells come from the poset")] += c;
        }
        Inequality::new(self.constant, &coeffs)
    }
}

/// Each monomial gives one inequality: `a(i,j)` gives `A(i,j) >= 0` and
/// `q / prod a` gives `1 - sum A >= 0`.
pub fn tropicalize(terms: &[SuperpotentialTerm]) -> Vec<TropicalInequality> {
    terms
        .iter()
        .map(|t| match t {
            SuperpotentialTerm::Linear { cell } => TropicalInequality { constant: 0, coefficients: vec![(*cell, 1)] },
            SuperpotentialTerm::Quantum { denominator, .. } => {
                TropicalInequality { constant: 1, coefficients: denominator.iter().map(|&c| (c, -1)).collect() }
            }
        })
        .collect()
}

/// Coordinate names `A11, A12, ...` in lexicographic order.
pub fn coordinate_names(n: usize) -> Result<Vec<String>> {
    Ok(StaircasePoset::new(n)?.elements.iter().map(|(i, j)| format!("A{i}{j}")).collect())
}

/// Stanley's chain polytope: nonnegativity plus one row per maximal chain.
pub fn chain_polytope(poset: &StaircasePoset) -> RationalPolytopeH {
    let d = poset.len();
    let mut rows: Vec<Inequality> = (0..d)
        .map(|k| {
            let mut c = vec![0; d];
            c[k] = 1;
            Inequality::new(0, &c)
        })
        .collect();
    for chain in poset.maximal_chains() {
        let mut c = vec![0; d];
        for cell in chain {
            c[poset.index(cell).expect("chain cells are elements")] = -1;
        }
        rows.push(Inequality::new(1, &c));
    }
    RationalPolytopeH::new(d, rows).expect("rows have the poset dimension")
}

/// The superpotential polytope from tropicalization, checked against the
/// chain polytope.
pub fn gamma_hrep(n: usize) -> Result<RationalPolytopeH> {
    let poset = StaircasePoset::new(n)?;
    let rows = tropicalize(&build_superpotential(n)?).iter().map(|t| t.to_row(&poset)).collect::<Vec<_>>();
    let gamma = RationalPolytopeH::new(poset.len(), rows)?;
    if gamma.row_set() != chain_polytope(&poset).row_set() {
        return Err(Error::GammaMismatch(n));
    }
    Ok(gamma)
}

/// Antichain indicator vectors, as a point set.
pub fn gamma_vertices(n: usize) -> Result<RationalPolytopeV> {
    let poset = StaircasePoset::new(n)?;
    let points: Vec<_> = enumerate_antichains(&poset).iter().map(|a| integer_point(&a.indicator(&poset))).collect();
    Ok(RationalPolytopeV::new(poset.len(), points)?)
}

/// Cells of the quantum denominators, as sets, for comparison with chains.
pub fn quantum_cell_sets(n: usize) -> Result<BTreeSet<BTreeSet<Cell>>> {
    Ok(build_superpotential(n)?
        .into_iter()
        .filter_map(|t| match t {
            SuperpotentialTerm::Quantum { denominator, .. } => Some(denominator.into_iter().collect()),
            SuperpotentialTerm::Linear { .. } => None,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::staircase_syt_count;

    #[test]
    fn n3_poset() {
        let p = StaircasePoset::new(3).unwrap();
        assert_eq!(p.len(), 6);
        let covers = p.covers();
        let expected_covers = vec![
            ((1, 1), (1, 2)),
            ((1, 1), (2, 2)),
            ((1, 2), (1, 3)),
            ((1, 2), (2, 3)),
            ((2, 2), (2, 3)),
            ((2, 2), (3, 3)),
        ];
        assert_eq!(covers, expected_covers);
        let chains = p.maximal_chains();
        let expected = vec![
            vec![(1, 3), (1, 2), (1, 1)],
            vec![(2, 3), (1, 2), (1, 1)],
            vec![(2, 3), (2, 2), (1, 1)],
            vec![(3, 3), (2, 2), (1, 1)],
        ];
        assert_eq!(chains, expected);
        let one = StaircasePoset::new(1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.covers().is_empty());
    }

    #[test]
    fn closed_form_order_matches_covers() {
        for n in 1..=5 {
            let p = StaircasePoset::new(n).unwrap();
            // transitive closure of the covers
            let d = p.len();
            let mut reach = vec![vec![false; d]; d];
            for k in 0..d {
                reach[k][k] = true;
            }
            for (u, l) in p.covers() {
                reach[p.index(l).unwrap()][p.index(u).unwrap()] = true;
            }
            for k in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        if reach[a][k] && reach[k][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
            for a in 0..d {
                for b in 0..d {
                    assert_eq!(p.leq(a, b), reach[a][b], "n={n} {:?} {:?}", p.elements()[a], p.elements()[b]);
                }
            }
        }
    }

    #[test]
    fn antichain_counts() {
        assert_eq!(enumerate_antichains(&StaircasePoset::new(1).unwrap()).len(), 2);
        for n in 1..=6 {
            let count = enumerate_antichains(&StaircasePoset::new(n).unwrap()).len();
            assert_eq!(BigUint::from(count), catalan(n + 1));
        }
        assert_eq!(catalan(4), BigUint::from(14u32));
    }

    #[test]
    fn dyck_example() {
        let p = StaircasePoset::new(3).unwrap();
        let a = Antichain::new(&p, vec![(1, 2)]).unwrap();
        let path = antichain_to_dyck(&p, &a);
        assert_eq!(path.heights(), [0, 1, 0, 1, 2, 3, 2, 1, 0]);
        assert_eq!(path.word(), "UDUUUDDD");
        assert_eq!(antichain_to_dyck(&p, &Antichain::empty()).word(), "UDUDUDUD");
    }

    #[test]
    fn dyck_bijection() {
        for n in 1..=4 {
            let p = StaircasePoset::new(n).unwrap();
            let all = enumerate_antichains(&p);
            let paths: BTreeSet<DyckPath> = all.iter().map(|a| antichain_to_dyck(&p, a)).collect();
            assert_eq!(paths.len(), all.len());
            for a in &all {
                let path = antichain_to_dyck(&p, a);
                assert!(path.is_valid());
                assert_eq!(&dyck_to_antichain(&p, &path).unwrap(), a);
            }
        }
    }

    #[test]
    fn linear_extensions() {
        for n in 1..=6 {
            let p = StaircasePoset::new(n).unwrap();
            assert_eq!(linear_extension_count(&p).unwrap(), staircase_syt_count(n));
        }
        assert_eq!(linear_extension_count(&StaircasePoset::new(3).unwrap()).unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn n3_superpotential() {
        let terms = build_superpotential(3).unwrap();
        assert_eq!(terms.len(), 10);
        let quantum: Vec<String> = terms[6..].iter().map(ToString::to_string).collect();
        assert_eq!(quantum, ["q/(a11 a12 a13)", "q/(a11 a12 a23)", "q/(a11 a22 a23)", "q/(a11 a22 a33)"]);
        assert_eq!(format_superpotential(&build_superpotential(1).unwrap()), "a11 + q/(a11)");
        assert_eq!(build_superpotential(4).unwrap().len(), 18);
    }

    #[test]
    fn quantum_terms_are_maximal_chains() {
        for n in 1..=5 {
            let p = StaircasePoset::new(n).unwrap();
            let chains: BTreeSet<BTreeSet<Cell>> =
                p.maximal_chains().into_iter().map(|c| c.into_iter().collect()).collect();
            assert_eq!(quantum_cell_sets(n).unwrap(), chains);
        }
    }

    #[test]
    fn gamma_rows() {
        let g = gamma_hrep(3).unwrap();
        assert_eq!(g.rows().len(), 10);
        assert!(g.rows().contains(&Inequality::new(1, &[-1, -1, -1, 0, 0, 0])));
        let one = gamma_hrep(1).unwrap();
        assert_eq!(one.row_set(), BTreeSet::from([Inequality::new(0, &[1]), Inequality::new(1, &[-1])]));
    }
}
