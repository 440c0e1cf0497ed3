//! The quiver dual to the co-rectangles graph, its exchange matrix, and the
//! matrix folded along the transpose involution.
//!
//! Orbit order of the folded matrix: mutable orbits first, the fixed ones
//! (complements of the `k x k` squares, `k = 1..n-1`) and then the pairs
//! (complements of `a x b` and `b x a`, `1 <= a < b <= n-1`, in
//! lexicographic order); then the frozen orbits: the full square, the pairs
//! from the `a x n` and `n x a` rectangles for `a = 1..n-1`, and `∅`.
//! This order is fixed for `n = 4`; other `n` follow the same
//! pattern by convention.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::plabic::{Color, PlabicGraph};

/// One vertex per face; arrows are kept with multiplicity after 2-cycles
/// cancel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub labels: Vec<Partition>,
    pub frozen: Vec<bool>,
    /// `(from, to, multiplicity)` with `multiplicity > 0`.
    pub arrows: Vec<(usize, usize, usize)>,
}

impl Quiver {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &Partition) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mutable(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.frozen[v]).collect()
    }

    /// Arrows from `a` to `b`.
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.arrows.iter().find(|&&(x, y, _)| x == a && y == b).map_or(0, |&(_, _, m)| m)
    }

    /// Arrows as label pairs, repeated by multiplicity.
    pub fn labelled_arrows(&self) -> Vec<(Partition, Partition)> {
        let mut out = Vec::new();
        for &(a, b, m) in &self.arrows {
            for _ in 0..m {
                out.push((self.labels[a].clone(), self.labels[b].clone()));
            }
        }
        out.sort();
        out
    }

    /// DOT export with frozen vertices boxed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for (v, label) in self.labels.iter().enumerate() {
            let shape = if self.frozen[v] { "box" } else { "ellipse" };
            writeln!(out, "  q{v} [label=\"{label}\", shape={shape}];").expect("write to string");
        }
        for &(a, b, m) in &self.arrows {
            for _ in 0..m {
                writeln!(out, "  q{a} -> q{b};").expect("write to string");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Crossing a bicolored edge, the hollow endpoint lies to the left: the
/// arrow goes from the face right of `hollow -> filled` to the face on its
/// left. Arrows between two frozen faces are dropped.
pub fn dual_quiver(graph: &PlabicGraph) -> Quiver {
    let faces = graph.faces();
    let mut net: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let (cu, cv) = (graph.vertices()[u].color(), graph.vertices()[v].color());
        let hollow = match (cu, cv) {
            (Some(Color::Hollow), Some(Color::Filled)) => u,
            (Some(Color::Filled), Some(Color::Hollow)) => v,
            _ => continue,
        };
        let filled = if hollow == u { v } else { u };
        let h = graph.half_edge(hollow, filled).expect("edge endpoints are adjacent");
        debug_assert_eq!(h.edge, e);
        let left = graph.left_face(h);
        let right = graph.left_face(graph.half_edge(filled, hollow).expect("edge endpoints are adjacent"));
        if left == right || (faces[left].frozen && faces[right].frozen) {
            continue;
        }
        let (a, b, s) = if right < left { (right, left, 1) } else { (left, right, -1) };
        *net.entry((a, b)).or_insert(0) += s;
    }
    let arrows = net
        .into_iter()
        .filter(|&(_, m)| m != 0)
        .map(|((a, b), m)| if m > 0 { (a, b, m as usize) } else { (b, a, (-m) as usize) })
        .collect();
    Quiver {
        labels: faces.iter().map(|f| f.label.clone()).collect(),
        frozen: faces.iter().map(|f| f.frozen).collect(),
        arrows,
    }
}

/// `B[μ][ν] = #(μ -> ν) - #(ν -> μ)` for all rows `μ` and mutable `ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeMatrix {
    pub rows: Vec<Partition>,
    pub columns: Vec<Partition>,
    pub entries: Vec<Vec<i64>>,
}

pub fn exchange_matrix(q: &Quiver) -> ExchangeMatrix {
    let mutable = q.mutable();
    let entries = (0..q.len())
        .map(|a| mutable.iter().map(|&b| q.multiplicity(a, b) as i64 - q.multiplicity(b, a) as i64).collect())
        .collect();
    ExchangeMatrix { rows: q.labels.clone(), columns: mutable.iter().map(|&v| q.labels[v].clone()).collect(), entries }
}

/// Orbits of the transpose involution in folded-matrix order, each with
/// its representative first, together with the number of mutable orbits.
pub fn orbit_order(n: usize) -> (Vec<Vec<Partition>>, usize) {
    let co = |rows: usize, cols: usize| Partition::rectangle(rows, cols).complement(n).expect("rectangle fits");
    let mut orbits: Vec<Vec<Partition>> = (1..n).map(|k| vec![co(k, k)]).collect();
    for a in 1..n {
        for b in a + 1..n {
            orbits.push(vec![co(a, b), co(b, a)]);
        }
    }
    let mutable = orbits.len();
    orbits.push(vec![co(0, 0)]);
    for a in 1..n {
        orbits.push(vec![co(a, n), co(n, a)]);
    }
    if n > 0 {
        orbits.push(vec![co(n, n)]);
    }
    (orbits, mutable)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldedMatrix {
    pub row_orbits: Vec<Vec<Partition>>,
    pub mutable: usize,
    pub entries: Vec<Vec<i64>>,
}

/// Sums exchange-matrix entries over each row orbit, for every member of
/// the column orbit; all members must agree.
pub fn fold(q: &Quiver, n: usize) -> Result<FoldedMatrix> {
    let (orbits, mutable) = orbit_order(n);
    let index = |label: &Partition| q.index(label).ok_or_else(|| Error::UnexpectedFace(label.to_string()));
    let members: Vec<Vec<usize>> =
        orbits.iter().map(|o| o.iter().map(index).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let b = |x: usize, y: usize| q.multiplicity(x, y) as i64 - q.multiplicity(y, x) as i64;
    let mut entries = vec![vec![0; mutable]; orbits.len()];
    for (row, rs) in members.iter().enumerate() {
        for (col, cs) in members[..mutable].iter().enumerate() {
            let sums: Vec<i64> = cs.iter().map(|&c| rs.iter().map(|&r| b(r, c)).sum()).collect();
            if sums.iter().any(|&s| s != sums[0]) {
                return Err(Error::FoldIllDefined { row: row + 1, col: col + 1 });
            }
            entries[row][col] = sums[0];
        }
    }
    Ok(FoldedMatrix { row_orbits: orbits, mutable, entries })
}

/// The quiver of the co-rectangles graph, folded.
pub fn folded_matrix(n: usize) -> Result<FoldedMatrix> {
    let graph = PlabicGraph::corect(n)?;
    fold(&dual_quiver(&graph), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn n4_quiver_arrows() {
        let q = dual_quiver(&PlabicGraph::corect(4).unwrap());
        assert_eq!(q.len(), 17);
        let arrows = [
            ("4,4,4,3", "4,4,4,4"),
            ("4,4,4,3", "4,4,2,2"),
            ("4,4,2,2", "4,1,1,1"),
            ("4,1,1,1", "0"),
            ("4,4,3,3", "4,4,4,3"),
            ("4,3,3,3", "4,4,3,3"),
            ("3,3,3,3", "4,3,3,3"),
            ("4,4,4,2", "4,4,4,3"),
            ("4,4,4,1", "4,4,4,2"),
            ("4,4,4", "4,4,4,1"),
            ("4,4", "4,4,1,1"),
            ("4,4,1,1", "4,4,2,2"),
            ("4,4,2,2", "4,4,3,3"),
            ("4", "4,1,1,1"),
            ("4,1,1,1", "4,2,2,2"),
            ("4,2,2,2", "4,3,3,3"),
            ("2,2,2,2", "4,2,2,2"),
            ("4,2,2,2", "4,4,2,2"),
            ("4,4,2,2", "4,4,4,2"),
            ("1,1,1,1", "4,1,1,1"),
            ("4,1,1,1", "4,4,1,1"),
            ("4,4,1,1", "4,4,4,1"),
            ("4,4,4,2", "4,4,1,1"),
            ("4,4,1,1", "4"),
            ("4,4,4,1", "4,4"),
            ("4,4,3,3", "4,2,2,2"),
            ("4,2,2,2", "1,1,1,1"),
            ("4,3,3,3", "2,2,2,2"),
        ];
        let mut expected: Vec<(Partition, Partition)> = arrows.iter().map(|(a, b)| (p(a), p(b))).collect();
        expected.sort();
        assert_eq!(q.labelled_arrows(), expected);
    }

    #[test]
    fn transpose_is_an_automorphism() {
        for n in 1..=5 {
            let q = dual_quiver(&PlabicGraph::corect(n).unwrap());
            let arrows = q.labelled_arrows();
            let mut moved: Vec<_> = arrows.iter().map(|(a, b)| (a.transpose(), b.transpose())).collect();
            moved.sort();
            assert_eq!(moved, arrows, "n={n}");
        }
    }

    #[test]
    fn mutable_block_is_skew() {
        for n in 1..=4 {
            let q = dual_quiver(&PlabicGraph::corect(n).unwrap());
            let b = exchange_matrix(&q);
            let mutable = q.mutable();
            for (x, &vx) in mutable.iter().enumerate() {
                for (y, &vy) in mutable.iter().enumerate() {
                    assert_eq!(b.entries[vx][y], -b.entries[vy][x]);
                }
            }
        }
    }

    #[test]
    fn n4_folded_matrix() {
        let f = folded_matrix(4).unwrap();
        let expected_b4 = vec![
            vec![0, 1, 0, -1, 0, 0],
            vec![-1, 0, 1, 1, 0, -1],
            vec![0, -1, 0, 0, 0, 1],
            vec![2, -2, 0, 0, -1, 1],
            vec![0, 0, 0, 1, 0, -1],
            vec![0, 2, -2, -1, 1, 0],
            vec![-1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, -1, 1],
            vec![0, 0, 2, 0, 0, -1],
            vec![0, 0, -1, 0, 0, 0],
        ];
        assert_eq!(f.entries, expected_b4);
        assert_eq!(f.entries[3][0], 2);
        assert_eq!(f.row_orbits[0], [p("4,4,4,3")]);
        assert_eq!(f.row_orbits[3], [p("4,4,4,2"), p("4,4,3,3")]);
        assert_eq!(f.row_orbits[10], [p("0")]);
    }

    #[test]
    fn small_folds_are_well_defined() {
        for n in 1..=5 {
            let f = folded_matrix(n).unwrap();
            assert_eq!(f.row_orbits.len(), n * (n - 1) / 2 + n + 1, "n={n}");
        }
        let q3 = dual_quiver(&PlabicGraph::corect(3).unwrap());
        assert_eq!(q3.len(), 10);
        assert_eq!(q3.frozen.iter().filter(|&&f| f).count(), 6);
        assert_eq!(dual_quiver(&PlabicGraph::corect(2).unwrap()).len(), 5);
    }
}
