//! Exact convex polytopes: facets from points, vertices from inequalities,
//! face counts, normalized volume, and lattice-preserving linear maps.
//!
//! Inequalities are written `constant + coeffs . x >= 0` and kept as
//! primitive integer rows. Points are exact rationals and serialize as
//! `"p/q"` strings.

mod bitset;
mod dd;
pub mod linalg;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use bitset::BitSet;

use crate::error::PolytopeError;
use linalg::{det_i64, normalize, primitive, rank};

type PResult<T> = std::result::Result<T, PolytopeError>;

/// Largest ambient dimension accepted by the hull routines.
pub const MAX_DIM: usize = 10;

/// Largest dimension for which the full face lattice is enumerated.
pub const MAX_FACE_LATTICE_DIM: usize = 8;

pub type Point = Vec<BigRational>;

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> PResult<BigRational> {
    let bad = || PolytopeError::BadRational(s.to_string());
    let (num, den) = match s.trim().split_once('/') {
        Some((p, q)) => {
            (p.trim().parse::<BigInt>().map_err(|_| bad())?, q.trim().parse::<BigInt>().map_err(|_| bad())?)
        }
        None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Lowest terms with a positive denominator; integers print without `/1`.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn integer_point(coords: &[i64]) -> Point {
    coords.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// A polytope given by points; duplicates are removed and order is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytopeV {
    dim: usize,
    points: Vec<Point>,
}

impl RationalPolytopeV {
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> PResult<Self> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        if set.is_empty() {
            return Err(PolytopeError::Empty);
        }
        if let Some(p) = set.iter().find(|p| p.len() != dim) {
            return Err(PolytopeError::DimensionMismatch { expected: dim, found: p.len() });
        }
        Ok(RationalPolytopeV { dim, points: set.into_iter().collect() })
    }

    pub fn from_integer_points<'a>(dim: usize, points: impl IntoIterator<Item = &'a Vec<i64>>) -> PResult<Self> {
        RationalPolytopeV::new(dim, points.into_iter().map(|p| integer_point(p)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Dimension of the affine hull of the points.
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.points.iter().collect::<Vec<_>>())
    }

    /// Integer coordinates, if every point is integral.
    pub fn integer_points(&self) -> Option<Vec<Vec<i64>>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|x| if x.is_integer() { i64::try_from(x.numer()).ok() } else { None }).collect())
            .collect()
    }
}

fn affine_rank(pts: &[&Point]) -> usize {
    let Some((first, rest)) = pts.split_first() else { return 0 };
    let diffs: Vec<Vec<BigRational>> =
        rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

/// `constant + coeffs . x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub constant: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl Inequality {
    pub fn new(constant: i64, coeffs: &[i64]) -> Self {
        Inequality { constant: constant.into(), coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }.normalized()
    }

    /// Divides by the content so the row is primitive. Positive scaling
    /// only, so the half-space is unchanged.
    pub fn normalized(self) -> Self {
        let mut all = vec![self.constant];
        all.extend(self.coeffs);
        let mut all = normalize(all);
        let constant = all.remove(0);
        Inequality { constant, coeffs: all }
    }

    pub fn evaluate(&self, x: &[BigRational]) -> BigRational {
        let mut total = BigRational::from_integer(self.constant.clone());
        for (c, v) in self.coeffs.iter().zip(x) {
            total += BigRational::from_integer(c.clone()) * v;
        }
        total
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        !self.evaluate(x).is_negative()
    }

    pub fn as_i64(&self) -> Option<(i64, Vec<i64>)> {
        let c = i64::try_from(&self.constant).ok()?;
        let v = self.coeffs.iter().map(|x| i64::try_from(x).ok()).collect::<Option<Vec<_>>>()?;
        Some((c, v))
    }
}

impl fmt::Display for Inequality {
    /// Renders as e.g. `1 - A11 - A12 >= 0` with generic names `x1, x2, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.coeffs.len()).map(|i| format!("x{i}")).collect();
        f.write_str(&render_inequality(self, &names))
    }
}

/// Renders an inequality with the given coordinate names.
pub fn render_inequality(row: &Inequality, names: &[String]) -> String {
    let mut out = String::new();
    if !row.constant.is_zero() {
        out.push_str(&row.constant.to_string());
    }
    for (c, name) in row.coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let term = if mag.is_one() { name.clone() } else { format!("{mag}{name}") };
        if out.is_empty() {
            out = if c.is_negative() { format!("-{term}") } else { term };
        } else {
            out.push_str(&format!(" {sign} {term}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" >= 0");
    out
}

/// A polytope given by inequalities; rows are primitive, sorted and
/// deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytopeH {
    dim: usize,
    rows: Vec<Inequality>,
}

impl RationalPolytopeH {
    pub fn new(dim: usize, rows: impl IntoIterator<Item = Inequality>) -> PResult<Self> {
        let set: BTreeSet<Inequality> = rows.into_iter().map(Inequality::normalized).collect();
        if let Some(r) = set.iter().find(|r| r.coeffs.len() != dim) {
            return Err(PolytopeError::DimensionMismatch { expected: dim, found: r.coeffs.len() });
        }
        Ok(RationalPolytopeH { dim, rows: set.into_iter().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Inequality] {
        &self.rows
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.rows.iter().all(|r| r.satisfied_by(x))
    }

    pub fn row_set(&self) -> BTreeSet<Inequality> {
        self.rows.iter().cloned().collect()
    }
}

fn check_dim(dim: usize) -> PResult<()> {
    if dim > MAX_DIM {
        return Err(PolytopeError::DimensionLimit { dim, max: MAX_DIM });
    }
    Ok(())
}

/// Primitive integer row `(1, p)` scaled to clear denominators.
fn homogenized(p: &Point) -> Vec<BigInt> {
    let mut q = vec![BigRational::one()];
    q.extend(p.iter().cloned());
    primitive(&q)
}

/// Facets of a full-dimensional hull, each with the set of input points it
/// contains.
fn facet_incidence(p: &RationalPolytopeV) -> PResult<Vec<(Inequality, BitSet)>> {
    check_dim(p.dim)?;
    let affine = p.affine_dim();
    if affine < p.dim {
        return Err(PolytopeError::LowerDimensional { affine_dim: affine, ambient: p.dim });
    }
    let rows: Vec<Vec<BigInt>> = p.points.iter().map(homogenized).collect();
    let rays = dd::extreme_rays(&rows, p.dim + 1)?;
    let mut out: Vec<(Inequality, BitSet)> = rays
        .into_iter()
        .map(|r| {
            let mut v = r.vector;
            let constant = v.remove(0);
            (Inequality { constant, coeffs: v }, r.tight)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// The irredundant inequality description of `conv(points)`.
pub fn facets(p: &RationalPolytopeV) -> PResult<RationalPolytopeH> {
    let rows = facet_incidence(p)?.into_iter().map(|(r, _)| r);
    RationalPolytopeH::new(p.dim, rows)
}

/// The extreme points of `conv(points)`.
pub fn extreme_points(p: &RationalPolytopeV) -> PResult<RationalPolytopeV> {
    let inc = facet_incidence(p)?;
    let vertices = vertex_indices(p.points.len(), &inc);
    RationalPolytopeV::new(p.dim, vertices.into_iter().map(|i| p.points[i].clone()))
}

/// A point is a vertex when it is the only point on every facet through it.
fn vertex_indices(count: usize, inc: &[(Inequality, BitSet)]) -> Vec<usize> {
    (0..count)
        .filter(|&i| {
            let mut common = BitSet::full(count);
            for (_, on) in inc.iter().filter(|(_, on)| on.contains(i)) {
                common = common.intersection(on);
            }
            common.len() == 1
        })
        .collect()
}

/// Vertices of a bounded polytope given by inequalities.
pub fn vertices(h: &RationalPolytopeH) -> PResult<RationalPolytopeV> {
    check_dim(h.dim)?;
    let mut rows: Vec<Vec<BigInt>> =
        h.rows.iter().map(|r| std::iter::once(r.constant.clone()).chain(r.coeffs.iter().cloned()).collect()).collect();
    let mut t_row = vec![BigInt::zero(); h.dim + 1];
    t_row[0] = BigInt::one();
    rows.push(t_row);
    let rays = dd::extreme_rays(&rows, h.dim + 1).map_err(|e| match e {
        PolytopeError::Degenerate => PolytopeError::Unbounded,
        other => other,
    })?;
    if rays.iter().any(|r| r.vector[0].is_zero()) {
        return Err(PolytopeError::Unbounded);
    }
    if rays.is_empty() {
        return Err(PolytopeError::Degenerate);
    }
    RationalPolytopeV::new(
        h.dim,
        rays.into_iter().map(|r| {
            let t = BigRational::from_integer(r.vector[0].clone());
            r.vector[1..].iter().map(|x| BigRational::from_integer(x.clone()) / &t).collect()
        }),
    )
}

/// Face structure of a full-dimensional polytope, as vertex sets.
struct FaceLattice<'a> {
    vertices: &'a [Point],
    facets: Vec<BitSet>,
    dims: HashMap<BitSet, usize>,
}

impl<'a> FaceLattice<'a> {
    fn new(p: &'a RationalPolytopeV) -> PResult<(Self, Vec<usize>)> {
        let inc = facet_incidence(p)?;
        let keep = vertex_indices(p.points.len(), &inc);
        // re-index the facets on the vertex subset
        let facets = inc
            .iter()
            .map(|(_, on)| {
                let mut s = BitSet::new(keep.len());
                for (new, &old) in keep.iter().enumerate() {
                    if on.contains(old) {
                        s.insert(new);
                    }
                }
                s
            })
            .collect();
        Ok((FaceLattice { vertices: &p.points, facets, dims: HashMap::new() }, keep))
    }

    fn dim_of(&mut self, face: &BitSet, keep: &[usize]) -> usize {
        if let Some(&d) = self.dims.get(face) {
            return d;
        }
        let pts: Vec<&Point> = face.iter().map(|i| &self.vertices[keep[i]]).collect();
        let d = affine_rank(&pts);
        self.dims.insert(face.clone(), d);
        d
    }

    /// Faces of `face` one dimension lower.
    fn facets_of(&mut self, face: &BitSet, dim: usize, keep: &[usize]) -> Vec<BitSet> {
        let mut out = BTreeSet::new();
        for g in self.facets.clone() {
            let h = face.intersection(&g);
            if h != *face && !h.is_empty() && self.dim_of(&h, keep) + 1 == dim {
                out.insert(h);
            }
        }
        out.into_iter().collect()
    }
}

/// Face counts `(f_0, ..., f_{d-1})` of a full-dimensional polytope.
pub fn f_vector(p: &RationalPolytopeV) -> PResult<Vec<usize>> {
    if p.dim > MAX_FACE_LATTICE_DIM {
        return Err(PolytopeError::DimensionLimit { dim: p.dim, max: MAX_FACE_LATTICE_DIM });
    }
    let (mut lattice, keep) = FaceLattice::new(p)?;
    let mut seen: BTreeSet<BitSet> = lattice.facets.iter().cloned().collect();
    let mut frontier: Vec<BitSet> = seen.iter().cloned().collect();
    while let Some(face) = frontier.pop() {
        for g in lattice.facets.clone() {
            let h = face.intersection(&g);
            if !h.is_empty() && seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    let mut counts = vec![0; p.dim];
    for face in &seen {
        let d = lattice.dim_of(face, &keep);
        if d < p.dim {
            counts[d] += 1;
        }
    }
    Ok(counts)
}

/// `dim!` times the Euclidean volume, from a pulling triangulation.
pub fn normalized_volume(p: &RationalPolytopeV) -> PResult<BigRational> {
    let (mut lattice, keep) = FaceLattice::new(p)?;
    let whole = BitSet::full(keep.len());
    let mut simplices = Vec::new();
    pull(&mut lattice, &keep, &whole, p.dim, &mut Vec::new(), &mut simplices);
    let mut total = BigRational::zero();
    for s in simplices {
        let base = &p.points[keep[s[0]]];
        let rows: Vec<Vec<BigRational>> =
            s[1..].iter().map(|&i| p.points[keep[i]].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        total += rational_det(&rows).abs();
    }
    Ok(total)
}

/// Collects simplices of a pulling triangulation of `face`; `apexes` holds
/// the vertices pulled so far.
fn pull(
    lattice: &mut FaceLattice<'_>,
    keep: &[usize],
    face: &BitSet,
    dim: usize,
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = face.first().expect("faces are nonempty");
    if dim == 0 {
        let mut s = apexes.clone();
        s.push(v);
        out.push(s);
        return;
    }
    apexes.push(v);
    for sub in lattice.facets_of(face, dim, keep) {
        if !sub.contains(v) {
            pull(lattice, keep, &sub, dim - 1, apexes, out);
        }
    }
    apexes.pop();
}

fn rational_det(rows: &[Vec<BigRational>]) -> BigRational {
    let mut a = rows.to_vec();
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] / &pivot;
            for j in c..n {
                let delta = &factor * &a[c][j];
                a[i][j] -= delta;
            }
        }
    }
    det
}

/// An integer matrix with determinant `±1`, with an optional integer
/// translation applied after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: Vec<Vec<i64>>,
    translation: Option<Vec<i64>>,
}

impl UnimodularMap {
    pub fn new(matrix: Vec<Vec<i64>>) -> PResult<Self> {
        let n = matrix.len();
        if let Some(r) = matrix.iter().find(|r| r.len() != n) {
            return Err(PolytopeError::DimensionMismatch { expected: n, found: r.len() });
        }
        let det = det_i64(&matrix);
        if det.abs() != BigInt::one() {
            return Err(PolytopeError::NotUnimodular(det.to_string()));
        }
        Ok(UnimodularMap { matrix, translation: None })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        UnimodularMap { matrix, translation: None }
    }

    pub fn with_translation(mut self, t: Vec<i64>) -> PResult<Self> {
        if t.len() != self.matrix.len() {
            return Err(PolytopeError::DimensionMismatch { expected: self.matrix.len(), found: t.len() });
        }
        self.translation = Some(t);
        Ok(self)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn determinant(&self) -> BigInt {
        det_i64(&self.matrix)
    }

    pub fn apply(&self, x: &[BigRational]) -> Point {
        self.matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut s: BigRational = row.iter().zip(x).map(|(&m, v)| BigRational::from_integer(m.into()) * v).sum();
                if let Some(t) = &self.translation {
                    s += BigRational::from_integer(t[i].into());
                }
                s
            })
            .collect()
    }
}

/// Image of a point set under a unimodular map.
pub fn apply_map(m: &UnimodularMap, p: &RationalPolytopeV) -> PResult<RationalPolytopeV> {
    if m.matrix.len() != p.dim {
        return Err(PolytopeError::DimensionMismatch { expected: m.matrix.len(), found: p.dim });
    }
    RationalPolytopeV::new(p.dim, p.points.iter().map(|x| m.apply(x)))
}

/// Exact determinant of an integer matrix.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    det_i64(matrix)
}

// JSON: {"dim": d, "points": [["1/2", "0"], ...]}
#[derive(Serialize, Deserialize)]
struct VJson {
    dim: usize,
    points: Vec<Vec<String>>,
}

impl Serialize for RationalPolytopeV {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        VJson { dim: self.dim, points: self.points.iter().map(|p| p.iter().map(format_rational).collect()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolytopeV {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = VJson::deserialize(d)?;
        let points = raw
            .points
            .iter()
            .map(|p| p.iter().map(|x| parse_rational(x)).collect::<PResult<Vec<_>>>())
            .collect::<PResult<Vec<_>>>()
            .map_err(D::Error::custom)?;
        RationalPolytopeV::new(raw.dim, points).map_err(D::Error::custom)
    }
}

// JSON: {"dim": d, "rows": [{"coeffs": [...], "const": c}]}; integers that
// do not fit in 64 bits are written as strings.
#[derive(Serialize, Deserialize)]
struct RowJson {
    coeffs: Vec<serde_json::Value>,
    #[serde(rename = "const")]
    constant: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct HJson {
    dim: usize,
    rows: Vec<RowJson>,
}

fn int_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn json_int(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for RationalPolytopeH {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HJson {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| RowJson { coeffs: r.coeffs.iter().map(int_json).collect(), constant: int_json(&r.constant) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolytopeH {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = HJson::deserialize(d)?;
        let rows = raw
            .rows
            .iter()
            .map(|r| {
                Some(Inequality {
                    constant: json_int(&r.constant)?,
                    coeffs: r.coeffs.iter().map(json_int).collect::<Option<Vec<_>>>()?,
                })
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| D::Error::custom("inequality entries must be integers"))?;
        RationalPolytopeH::new(raw.dim, rows).map_err(D::Error::custom)
    }
}
