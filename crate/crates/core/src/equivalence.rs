//! The integer matrix taking the superpotential polytope onto the
//! Newton-Okounkov body: its construction, block structure, unimodularity,
//! and the antichain to hook-decomposition matching behind it.
//!
//! Columns are indexed by pairs `(i, j)` with `0 <= i <= j <= n-1`: the
//! diagram is the `(n-1) x (n-1)` square plus `j` boxes right of the
//! diagonal (in column `n`) and `i` boxes below it (in row `n`). Pairs are
//! ordered by increasing `i`, then decreasing `j`. Rows follow the
//! coordinate order of [`CoordinateSystem`].

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{maxdiag, staircase_syt_count, Hook, HookDecomposition, Partition};
use crate::polytope::{self, apply_map, determinant, facets, normalized_volume, RationalPolytopeV, UnimodularMap};
use crate::superpotential::{enumerate_antichains, gamma_vertices, Antichain, Cell, StaircasePoset};
use crate::valuation::{delta_vertices, face_labels, valuation_maxdiag, CoordinateSystem, ValuationVector};

pub type Matrix = Vec<Vec<i64>>;

/// Largest `n` for which the hull-level comparison is attempted.
pub const HULL_CHECK_MAX: usize = 4;

/// The diagram of column pair `(below, right)`.
pub fn column_partition(n: usize, below: usize, right: usize) -> Partition {
    let mut parts = vec![n; right];
    parts.extend(std::iter::repeat_n(n - 1, n - 1 - right));
    parts.push(below);
    Partition::new(parts).expect("rows decrease")
}

/// Column pairs in matrix order.
pub fn column_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).rev().map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationMatrix {
    pub n: usize,
    /// Column pairs `(below, right)`.
    pub columns: Vec<(usize, usize)>,
    pub column_partitions: Vec<Partition>,
    /// Representative face label of each row.
    pub rows: Vec<Partition>,
    pub entries: Matrix,
}

impl ValuationMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entries as a unimodular map, if the determinant is `±1`.
    pub fn to_map(&self) -> Result<UnimodularMap> {
        Ok(UnimodularMap::new(self.entries.clone())?)
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.entries.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Matrix whose columns are the valuations of the near-square diagrams.
pub fn build_matrix(n: usize) -> Result<ValuationMatrix> {
    let coords = CoordinateSystem::new(n)?;
    let columns = column_pairs(n);
    let column_partitions: Vec<Partition> = columns.iter().map(|&(i, j)| column_partition(n, i, j)).collect();
    let vals = column_partitions.iter().map(|l| valuation_maxdiag(&coords, l)).collect::<Result<Vec<_>>>()?;
    let size = columns.len();
    let entries = (0..size).map(|r| (0..size).map(|c| vals[c][r]).collect()).collect();
    let rows = coords.orbits().iter().map(|o| o.representative.clone()).collect();
    Ok(ValuationMatrix { n, columns, column_partitions, rows, entries })
}

/// One block check with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub ok: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Check { ok: true, witness: None }
    }

    fn fail(witness: String) -> Self {
        Check { ok: false, witness: Some(witness) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub upper_left: Check,
    pub lower_right: Check,
    pub lower_left: Check,
    pub upper_right_bottom_row: Check,
}

impl BlockReport {
    pub fn all_ok(&self) -> bool {
        self.upper_left.ok && self.lower_right.ok && self.lower_left.ok && self.upper_right_bottom_row.ok
    }
}

/// Closed form of the upper left `n x n` block (1-based `i`, `j`).
pub fn upper_left_entry(n: usize, i: usize, j: usize) -> i64 {
    if i == n || j + i <= n {
        1
    } else {
        2
    }
}

/// Checks the four block facts used in the unimodularity proof.
pub fn check_blocks(m: &ValuationMatrix) -> Result<BlockReport> {
    let n = m.n;
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let e = &m.entries;
    let size = m.size();

    let mut upper_left = Check::pass();
    'ul: for i in 1..=n {
        for j in 1..=n {
            let want = upper_left_entry(n, i, j);
            if e[i - 1][j - 1] != want {
                upper_left = Check::fail(format!("entry ({i},{j}) is {}, expected {want}", e[i - 1][j - 1]));
                break 'ul;
            }
        }
    }

    let smaller = build_matrix(n - 1)?;
    let mut lower_right = Check::pass();
    'lr: for r in n..size {
        for c in n..size {
            if e[r][c] != smaller.entries[r - n][c - n] {
                lower_right = Check::fail(format!(
                    "entry ({},{}) is {}, the smaller matrix has {}",
                    r + 1,
                    c + 1,
                    e[r][c],
                    smaller.entries[r - n][c - n]
                ));
                break 'lr;
            }
        }
    }

    let column = |c: usize| (n..size).map(|r| e[r][c]).collect::<Vec<_>>();
    let first = column(0);
    let lower_left = if first.iter().all(|&x| x == 0) && size > n {
        Check::fail("first column of the block is zero".into())
    } else if let Some(c) = (1..n).find(|&c| column(c) != first) {
        Check::fail(format!("column {} differs from column 1", c + 1))
    } else {
        Check::pass()
    };

    let upper_right_bottom_row = match (n..size).find(|&c| e[n - 1][c] != 0) {
        Some(c) => Check::fail(format!("entry ({n},{}) is {}", c + 1, e[n - 1][c])),
        None => Check::pass(),
    };

    Ok(BlockReport { upper_left, lower_right, lower_left, upper_right_bottom_row })
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum()).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn block_diagonal(a: &[Vec<i64>], b: &[Vec<i64>]) -> Matrix {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![0; p + q]; p + q];
    for i in 0..p {
        out[i][..p].copy_from_slice(&a[i]);
    }
    for i in 0..q {
        out[p + i][p..].copy_from_slice(&b[i]);
    }
    out
}

/// The three column operations reducing the upper left block: subtract
/// each column from the next, subtract the first column from the others,
/// then reverse the column order.
pub fn upper_left_steps(n: usize) -> [Matrix; 3] {
    let mut superdiag = identity(n);
    for i in 0..n.saturating_sub(1) {
        superdiag[i][i + 1] = -1;
    }
    let mut first_column = identity(n);
    for row in first_column.iter_mut().skip(1) {
        row[0] = -1;
    }
    let reversal = (0..n).map(|i| (0..n).map(|j| i64::from(i + j == n - 1)).collect()).collect();
    [superdiag, first_column, reversal]
}

/// Product of [`upper_left_steps`].
pub fn upper_left_transform(n: usize) -> Matrix {
    let [a, b, c] = upper_left_steps(n);
    matmul(&matmul(&a, &b), &c)
}

fn is_lower_unitriangular(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row[i] == 1 && row[i + 1..].iter().all(|&x| x == 0))
}

/// Column operations `R` with `M_n R` lower triangular with unit diagonal,
/// built blockwise by induction on `n`. Together with the intermediate
/// product `M_n diag(T_n, R_{n-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub blockwise: Matrix,
    pub intermediate: Matrix,
    pub transform: Matrix,
    pub result: Matrix,
}

pub fn constructive_reduction(n: usize) -> Result<Reduction> {
    let m = build_matrix(n)?;
    if n == 1 {
        let id = identity(1);
        return Ok(Reduction {
            blockwise: id.clone(),
            intermediate: m.entries.clone(),
            transform: id,
            result: m.entries,
        });
    }
    let inner = constructive_reduction(n - 1)?;
    let blockwise = block_diagonal(&upper_left_transform(n), &inner.transform);
    let intermediate = matmul(&m.entries, &blockwise);
    // clear the upper right block with the unit columns 1..n-1
    let size = m.size();
    let mut cleanup = identity(size);
    for c in n..size {
        for r in 0..n - 1 {
            cleanup[r][c] = -intermediate[r][c];
        }
    }
    let transform = matmul(&blockwise, &cleanup);
    let result = matmul(&m.entries, &transform);
    Ok(Reduction { blockwise, intermediate, transform, result })
}

/// Exact determinant and the constructive check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularityReport {
    pub determinant: String,
    pub determinant_is_unit: bool,
    pub reduction_is_lower_unitriangular: bool,
    pub transform_determinant: String,
}

pub fn is_unimodular(n: usize) -> Result<UnimodularityReport> {
    let m = build_matrix(n)?;
    let det = determinant(&m.entries);
    let red = constructive_reduction(n)?;
    let tdet = determinant(&red.transform);
    let one = BigInt::from(1);
    Ok(UnimodularityReport {
        determinant_is_unit: det == one || det == -one.clone(),
        determinant: det.to_string(),
        reduction_is_lower_unitriangular: is_lower_unitriangular(&red.result),
        transform_determinant: tdet.to_string(),
    })
}

/// The poset element of a hook: `(arm, 1^leg)` with `arm > leg` goes to
/// `b(n+1-arm, n+1-arm+leg)`.
pub fn hook_to_cell(n: usize, hook: Hook) -> Option<Cell> {
    if hook.arm == 0 || hook.arm > n || hook.leg >= hook.arm {
        return None;
    }
    let i = n + 1 - hook.arm;
    Some((i, i + hook.leg))
}

pub fn cell_to_hook(n: usize, (i, j): Cell) -> Hook {
    Hook { arm: n + 1 - i, leg: j - i }
}

/// The antichain of the hook decomposition of the complement of `λ`.
/// Every hook must have more arm than leg.
pub fn antichain_from_partition(poset: &StaircasePoset, lambda: &Partition) -> Result<Antichain> {
    let n = poset.n();
    let hooks = lambda.complement(n)?.hook_decomposition();
    let cells = hooks
        .hooks
        .iter()
        .map(|&h| hook_to_cell(n, h))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::HookNotDominant(lambda.to_string()))?;
    Antichain::new(poset, cells)
}

/// Inverse of [`antichain_from_partition`].
pub fn partition_from_antichain(poset: &StaircasePoset, a: &Antichain) -> Result<Partition> {
    let n = poset.n();
    let mut hooks: Vec<Hook> = a.members().iter().map(|&c| cell_to_hook(n, c)).collect();
    hooks.sort_by_key(|h| std::cmp::Reverse(h.arm));
    let decomposition = HookDecomposition { hooks };
    let complement =
        Partition::from_cells(&decomposition.reassemble()).ok_or_else(|| Error::NotAntichain(a.members().to_vec()))?;
    complement.complement(n)
}

/// Partitions whose complement splits into hooks with more arm than leg;
/// these are exactly the images of antichains.
pub fn matched_partitions(n: usize) -> Vec<Partition> {
    Partition::all_in_square(n)
        .into_iter()
        .filter(|l| l.complement(n).expect("fits").hook_decomposition().is_arm_dominant())
        .collect()
}

/// The partitions `λ_k` with `λ_k^c` the hooks of `λ^c`.
pub fn hook_pieces(n: usize, lambda: &Partition) -> Result<Vec<Partition>> {
    lambda
        .complement(n)?
        .hook_decomposition()
        .hooks
        .iter()
        .map(|h| {
            let nu = h.to_partition();
            nu.complement(n)
        })
        .collect()
}

/// Singleton antichains go to the columns of the matrix, in order.
pub fn verify_singleton_images(n: usize) -> Result<Check> {
    let m = build_matrix(n)?;
    let coords = CoordinateSystem::new(n)?;
    let poset = StaircasePoset::new(n)?;
    for (k, &(i, j)) in poset.elements().iter().enumerate() {
        let pair = (i - 1, n - 1 - (j - i));
        if m.columns[k] != pair {
            return Ok(Check::fail(format!("b{i}{j} sits at column {:?}, expected {pair:?}", m.columns[k])));
        }
        let nu = cell_to_hook(n, (i, j)).to_partition();
        let want = valuation_maxdiag(&coords, &nu.complement(n)?)?;
        let mut e = vec![0; poset.len()];
        e[k] = 1;
        if m.apply(&e) != want {
            return Ok(Check::fail(format!("image of b{i}{j} is not the valuation of the complement of {nu}")));
        }
    }
    Ok(Check::pass())
}

/// `maxdiag(μ \ λ) = Σ maxdiag(μ \ λ_k)` over the hook pieces, for every
/// face label `μ` and every partition in `lambdas`.
pub fn verify_maxdiag_additivity(n: usize, lambdas: &[Partition]) -> Result<Check> {
    let labels = face_labels(n);
    for lambda in lambdas {
        let pieces = hook_pieces(n, lambda)?;
        for mu in &labels {
            let whole = maxdiag(mu, lambda);
            let parts: usize = pieces.iter().map(|p| maxdiag(mu, p)).sum();
            if whole != parts {
                return Ok(Check::fail(format!("λ = {lambda}, μ = {mu}: {whole} vs {parts}")));
            }
        }
    }
    Ok(Check::pass())
}

/// `val(p_λ) = Σ val(p_{λ_k})` for every partition in `lambdas`.
pub fn verify_valuation_additivity(n: usize, lambdas: &[Partition]) -> Result<Check> {
    let coords = CoordinateSystem::new(n)?;
    for lambda in lambdas {
        let whole = valuation_maxdiag(&coords, lambda)?;
        let mut sum = vec![0; coords.len()];
        for piece in hook_pieces(n, lambda)? {
            for (s, v) in sum.iter_mut().zip(valuation_maxdiag(&coords, &piece)?) {
                *s += v;
            }
        }
        if whole != sum {
            return Ok(Check::fail(format!("λ = {lambda}: {whole:?} vs {sum:?}")));
        }
    }
    Ok(Check::pass())
}

/// How far to take the comparison of the two polytopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Vertex,
    Hull,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub n: usize,
    pub antichains: usize,
    pub valuation_points: usize,
    /// Each antichain image equals the valuation of its matched partition.
    pub matching: Check,
    /// The images are distinct and exhaust the valuation points.
    pub vertex_level: Check,
    /// Facets of both hulls agree; `None` when not attempted.
    pub hull_level: Option<Check>,
    pub volume_gamma: Option<String>,
    pub volume_delta: Option<String>,
    pub expected_volume: String,
    pub volume_level: Option<Check>,
}

impl MainTheoremReport {
    pub fn all_ok(&self) -> bool {
        self.matching.ok
            && self.vertex_level.ok
            && self.hull_level.as_ref().is_none_or(|c| c.ok)
            && self.volume_level.as_ref().is_none_or(|c| c.ok)
    }
}

/// Images of the antichain indicators, keyed by antichain.
pub fn antichain_images(n: usize) -> Result<BTreeMap<Antichain, ValuationVector>> {
    let m = build_matrix(n)?;
    let poset = StaircasePoset::new(n)?;
    Ok(enumerate_antichains(&poset).into_iter().map(|a| (a.clone(), m.apply(&a.indicator(&poset)))).collect())
}

pub fn verify_main_theorem(n: usize, level: Level) -> Result<MainTheoremReport> {
    let m = build_matrix(n)?;
    let coords = CoordinateSystem::new(n)?;
    let poset = StaircasePoset::new(n)?;
    let antichains = enumerate_antichains(&poset);
    let delta = delta_vertices(n)?;

    let mut matching = Check::pass();
    let mut images = BTreeSet::new();
    for a in &antichains {
        let image = m.apply(&a.indicator(&poset));
        let lambda = partition_from_antichain(&poset, a)?;
        if matching.ok {
            if antichain_from_partition(&poset, &lambda)? != *a {
                matching = Check::fail(format!("{a} does not round-trip through {lambda}"));
            } else if image != valuation_maxdiag(&coords, &lambda)? {
                matching = Check::fail(format!("image of {a} is {image:?}, valuation of {lambda} differs"));
            }
        }
        images.insert(image);
    }
    let vertex_level = if images.len() != antichains.len() {
        Check::fail(format!("{} antichains have only {} distinct images", antichains.len(), images.len()))
    } else if images != delta {
        let missing: Vec<_> = delta.difference(&images).take(3).collect();
        let extra: Vec<_> = images.difference(&delta).take(3).collect();
        Check::fail(format!("valuations not hit: {missing:?}; images that are not valuations: {extra:?}"))
    } else {
        Check::pass()
    };

    let expected_volume = staircase_syt_count(n).to_string();
    let mut report = MainTheoremReport {
        n,
        antichains: antichains.len(),
        valuation_points: delta.len(),
        matching,
        vertex_level,
        hull_level: None,
        volume_gamma: None,
        volume_delta: None,
        expected_volume,
        volume_level: None,
    };
    if level == Level::Hull && n <= HULL_CHECK_MAX {
        let dim = poset.len();
        let gamma = gamma_vertices(n)?;
        let delta_points: Vec<Vec<i64>> = delta.into_iter().collect();
        let delta_v = RationalPolytopeV::from_integer_points(dim, &delta_points)?;
        let image = apply_map(&m.to_map()?, &gamma)?;
        let image_facets = facets(&image)?;
        let delta_facets = facets(&delta_v)?;
        report.hull_level = Some(if image_facets.row_set() == delta_facets.row_set() {
            Check::pass()
        } else {
            Check::fail(format!(
                "{} facets from the image, {} from the valuations",
                image_facets.rows().len(),
                delta_facets.rows().len()
            ))
        });
        let vg = normalized_volume(&gamma)?;
        let vd = normalized_volume(&delta_v)?;
        let expected = BigRational::from_integer(BigInt::from(staircase_syt_count(n)));
        report.volume_level = Some(if vg == expected && vd == expected {
            Check::pass()
        } else {
            Check::fail(format!("volumes {vg} and {vd}, expected {expected}"))
        });
        report.volume_gamma = Some(polytope::format_rational(&vg));
        report.volume_delta = Some(polytope::format_rational(&vd));
    }
    Ok(report)
}

/// Space-separated rows.
pub fn format_matrix(m: &[Vec<i64>]) -> String {
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    m.iter()
        .map(|row| row.iter().map(|x| format!("{x:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}
