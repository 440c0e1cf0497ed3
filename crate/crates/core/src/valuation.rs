//! Valuations of Plücker coordinates, computed from minimal flows and from
//! the closed maxdiag formula.
//!
//! Coordinates are indexed by transpose orbits of face labels, leaving out
//! the orbit of `∅` (its variable is set to 1). Orbits are ordered by the
//! index set of their representative, largest element first, descending.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{maxdiag, partition_to_indexset, IndexSet, Partition};
use crate::plabic::{corect_orientation, enumerate_flows, PerfectOrientation, PlabicGraph};

/// A valuation, one entry per coordinate orbit.
pub type ValuationVector = Vec<i64>;

/// A transpose orbit of face labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Partition,
    /// The representative first, then its transpose if different.
    pub members: Vec<Partition>,
}

impl Orbit {
    pub fn is_fixed(&self) -> bool {
        self.members.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSystem {
    n: usize,
    orbits: Vec<Orbit>,
}

/// The member of `{λ, λ^T}` with at least as many boxes above the diagonal
/// as below; ties go to the larger index set in colex order.
pub fn class_representative(lambda: &Partition, n: usize) -> Result<Partition> {
    let t = lambda.transpose();
    let (above, below) = lambda.diagonal_balance();
    Ok(match above.cmp(&below) {
        std::cmp::Ordering::Greater => lambda.clone(),
        std::cmp::Ordering::Less => t,
        std::cmp::Ordering::Equal => {
            let a = partition_to_indexset(lambda, n)?;
            let b = partition_to_indexset(&t, n)?;
            if a.colex_cmp(&b).is_ge() {
                lambda.clone()
            } else {
                t
            }
        }
    })
}

/// Face labels of the co-rectangles graph: the `n x n` square and the
/// complements of all nonempty rectangles.
pub fn face_labels(n: usize) -> Vec<Partition> {
    let mut labels = vec![Partition::rectangle(n, n)];
    for rows in 1..=n {
        for cols in 1..=n {
            labels.push(Partition::rectangle(rows, cols).complement(n).expect("rectangle fits"));
        }
    }
    labels
}

impl CoordinateSystem {
    pub fn new(n: usize) -> Result<Self> {
        let mut reps = BTreeSet::new();
        for label in face_labels(n) {
            if !label.is_empty() {
                reps.insert(class_representative(&label, n)?);
            }
        }
        let mut keyed = reps
            .into_iter()
            .map(|rep| Ok((partition_to_indexset(&rep, n)?, rep)))
            .collect::<Result<Vec<(IndexSet, Partition)>>>()?;
        keyed.sort_by(|a, b| b.0.colex_cmp(&a.0));
        let orbits = keyed
            .into_iter()
            .map(|(_, rep)| {
                let t = rep.transpose();
                let members = if t == rep { vec![rep.clone()] } else { vec![rep.clone(), t] };
                Orbit { representative: rep, members }
            })
            .collect();
        Ok(CoordinateSystem { n, orbits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbit containing `label`; `None` for `∅` and for non-labels.
    pub fn position(&self, label: &Partition) -> Option<usize> {
        self.orbits.iter().position(|o| o.members.contains(label))
    }

    /// Column headers: each representative's index set, e.g. `156`.
    pub fn headers(&self) -> Vec<String> {
        self.orbits
            .iter()
            .map(|o| {
                let set = partition_to_indexset(&o.representative, self.n).expect("labels fit");
                compact(&set)
            })
            .collect()
    }
}

/// Index set without separators when every element is a single digit.
pub fn compact(set: &IndexSet) -> String {
    if set.elements().iter().all(|&e| e < 10) {
        set.elements().iter().map(|e| e.to_string()).collect()
    } else {
        set.to_string()
    }
}

/// Closed form: the entry at orbit `{μ, μ^T}` is the sum of
/// `maxdiag(ν \ λ)` over the orbit members `ν`.
pub fn valuation_maxdiag(coords: &CoordinateSystem, lambda: &Partition) -> Result<ValuationVector> {
    lambda.check_fits(coords.n)?;
    Ok(coords.orbits.iter().map(|o| o.members.iter().map(|mu| maxdiag(mu, lambda) as i64).sum()).collect())
}

/// Valuations read off from flows.
pub struct FlowValuation {
    graph: PlabicGraph,
    orientation: PerfectOrientation,
    coords: CoordinateSystem,
}

impl FlowValuation {
    pub fn new(n: usize) -> Result<Self> {
        let graph = PlabicGraph::corect(n)?;
        let orientation = corect_orientation(&graph)?;
        Ok(FlowValuation { graph, orientation, coords: CoordinateSystem::new(n)? })
    }

    pub fn graph(&self) -> &PlabicGraph {
        &self.graph
    }

    pub fn orientation(&self) -> &PerfectOrientation {
        &self.orientation
    }

    pub fn coords(&self) -> &CoordinateSystem {
        &self.coords
    }

    /// Exponent vectors of all flow monomials to `target`, in orbit variables.
    pub fn exponent_vectors(&self, target: &IndexSet) -> Result<Vec<ValuationVector>> {
        let slot: Vec<Option<usize>> = self.graph.faces().iter().map(|f| self.coords.position(&f.label)).collect();
        enumerate_flows(&self.graph, &self.orientation, target)
            .iter()
            .map(|flow| {
                let mut v = vec![0; self.coords.len()];
                for path in &flow.paths {
                    for &f in &path.left_faces {
                        let i =
                            slot[f].ok_or_else(|| Error::UnexpectedFace(self.graph.faces()[f].label.to_string()))?;
                        v[i] += 1;
                    }
                }
                Ok(v)
            })
            .collect()
    }

    /// Coordinatewise minimum over the flow monomials of `p_λ`, which must
    /// itself be one of the monomials.
    pub fn valuation(&self, lambda: &Partition) -> Result<ValuationVector> {
        let target = partition_to_indexset(lambda, self.coords.n)?;
        let vectors = self.exponent_vectors(&target)?;
        let Some(first) = vectors.first() else {
            return Err(Error::NoMinimalMonomial(target.to_string()));
        };
        let min: ValuationVector =
            (0..first.len()).map(|i| vectors.iter().map(|v| v[i]).min().expect("nonempty")).collect();
        if vectors.iter().filter(|v| **v == min).count() != 1 {
            return Err(Error::NoMinimalMonomial(target.to_string()));
        }
        Ok(min)
    }
}

pub fn valuation_from_flows(n: usize, lambda: &Partition) -> Result<ValuationVector> {
    FlowValuation::new(n)?.valuation(lambda)
}

/// One row of the valuation table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerValuation {
    pub partition: Partition,
    #[serde(rename = "indexset", serialize_with = "serialize_elements")]
    pub index_set: IndexSet,
    pub valuation: ValuationVector,
}

fn serialize_elements<S: serde::Serializer>(set: &IndexSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(set.elements())
}

/// One representative per transpose class of partitions in the square,
/// sorted by index set.
pub fn class_representatives(n: usize) -> Result<Vec<Partition>> {
    let mut reps = BTreeSet::new();
    for lambda in Partition::all_in_square(n) {
        reps.insert(partition_to_indexset(&class_representative(&lambda, n)?, n)?);
    }
    Ok(reps.iter().map(IndexSet::to_partition).collect())
}

/// Largest n for which flow valuations are cross-checked by default.
pub const FLOW_CHECK_MAX: usize = 4;

/// Valuation of every class representative by the maxdiag formula, checked
/// against the flow computation when `n <= FLOW_CHECK_MAX`.
pub fn all_plucker_valuations(n: usize) -> Result<Vec<PluckerValuation>> {
    let coords = CoordinateSystem::new(n)?;
    let flows = if n <= FLOW_CHECK_MAX { Some(FlowValuation::new(n)?) } else { None };
    class_representatives(n)?
        .into_iter()
        .map(|lambda| {
            let valuation = valuation_maxdiag(&coords, &lambda)?;
            if let Some(fv) = &flows {
                let from_flows = fv.valuation(&lambda)?;
                if from_flows != valuation {
                    return Err(Error::ValuationMismatch {
                        partition: lambda.to_string(),
                        flows: from_flows,
                        maxdiag: valuation,
                    });
                }
            }
            let index_set = partition_to_indexset(&lambda, n)?;
            Ok(PluckerValuation { partition: lambda, index_set, valuation })
        })
        .collect()
}

/// Distinct valuations of Plücker coordinates; their convex hull is the
/// Newton-Okounkov body.
pub fn delta_vertices(n: usize) -> Result<BTreeSet<ValuationVector>> {
    let coords = CoordinateSystem::new(n)?;
    Partition::all_in_square(n).iter().map(|lambda| valuation_maxdiag(&coords, lambda)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn n3_coordinate_order() {
        let coords = CoordinateSystem::new(3).unwrap();
        assert_eq!(coords.headers(), ["156", "126", "145", "125", "124", "123"]);
        let reps: Vec<_> = coords.orbits().iter().map(|o| o.representative.clone()).collect();
        assert_eq!(reps, [p(&[3]), p(&[3, 3]), p(&[3, 1, 1]), p(&[3, 3, 1]), p(&[3, 3, 2]), p(&[3, 3, 3])]);
    }

    #[test]
    fn coordinate_count() {
        for n in 1..=6 {
            assert_eq!(CoordinateSystem::new(n).unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn maxdiag_examples() {
        let coords = CoordinateSystem::new(3).unwrap();
        assert_eq!(valuation_maxdiag(&coords, &p(&[3, 3, 2])).unwrap(), [0, 0, 0, 0, 0, 1]);
        assert_eq!(valuation_maxdiag(&coords, &p(&[2])).unwrap(), [2, 3, 1, 3, 2, 2]);
        for n in 1..=5 {
            let coords = CoordinateSystem::new(n).unwrap();
            let v = valuation_maxdiag(&coords, &Partition::rectangle(n, n)).unwrap();
            assert!(v.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn flow_examples() {
        let fv = FlowValuation::new(3).unwrap();
        assert_eq!(fv.valuation(&p(&[3, 2, 1])).unwrap(), [0, 2, 0, 2, 1, 1]);
        assert_eq!(fv.valuation(&p(&[3, 3, 3])).unwrap(), [0; 6]);
        assert_eq!(fv.valuation(&Partition::empty()).unwrap(), [2, 4, 1, 4, 2, 3]);
    }

    #[test]
    fn small_cases() {
        let n1 = all_plucker_valuations(1).unwrap();
        let values: Vec<_> = n1.iter().map(|r| r.valuation.clone()).collect();
        assert_eq!(n1.len(), 2);
        assert!(values.contains(&vec![0]) && values.contains(&vec![1]));
        assert_eq!(all_plucker_valuations(2).unwrap().len(), 5);
        assert_eq!(delta_vertices(2).unwrap().len(), 5);
    }

    #[test]
    fn json_row_shape() {
        let row = all_plucker_valuations(3).unwrap().into_iter().find(|r| r.partition == p(&[3, 2, 1])).unwrap();
        let json = serde_json::to_value(&row).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"partition": "3,2,1", "indexset": [1, 3, 5], "valuation": [0, 2, 0, 2, 1, 1]})
        );
    }
}
