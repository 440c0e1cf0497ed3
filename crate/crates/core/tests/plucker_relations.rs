//! The flow polynomials must satisfy the three-term Plücker relations when
//! every face variable is specialised independently. This checks the graph,
//! the orientation and the left-face computation without reference to any
//! tabulated value.

use std::collections::HashMap;

use corect::partitions::{IndexSet, Partition};
use corect::plabic::{corect_orientation, flow_polynomial, FlowPolynomial, PlabicGraph};

const PRIME: u64 = 1_000_003;

fn evaluate(poly: &FlowPolynomial, weights: &HashMap<Partition, u64>) -> u64 {
    poly.iter().fold(0, |acc, (monomial, &coeff)| {
        let term =
            monomial.iter().fold(coeff as u64, |t, (label, &e)| (0..e).fold(t, |t, _| t * weights[label] % PRIME));
        (acc + term) % PRIME
    })
}

fn coordinates(n: usize, seed: u64) -> HashMap<Vec<usize>, u64> {
    let g = PlabicGraph::corect(n).unwrap();
    let o = corect_orientation(&g).unwrap();
    let weights: HashMap<Partition, u64> = g
        .faces()
        .iter()
        .enumerate()
        .map(|(i, f)| (f.label.clone(), (i as u64 * 7919 + seed) % (PRIME - 1) + 1))
        .collect();
    IndexSet::all(n)
        .into_iter()
        .map(|j| {
            let value = evaluate(&flow_polynomial(&g, &o, &j), &weights);
            (j.elements().to_vec(), value)
        })
        .collect()
}

/// Counts failures of `p(Sac) p(Sbd) = p(Sab) p(Scd) + p(Sad) p(Sbc)`.
fn failures(n: usize, coords: &HashMap<Vec<usize>, u64>) -> (usize, usize) {
    let get = |s: &[usize], pair: [usize; 2]| {
        let mut key: Vec<usize> = s.iter().copied().chain(pair).collect();
        key.sort_unstable();
        coords[&key]
    };
    let mut bad = 0;
    let mut total = 0;
    let stems: Vec<Vec<usize>> = if n == 2 {
        vec![Vec::new()]
    } else {
        let mut stems: Vec<Vec<usize>> = IndexSet::all(n).iter().map(|j| j.elements()[..n - 2].to_vec()).collect();
        stems.sort();
        stems.dedup();
        stems
    };
    for s in stems {
        let rest: Vec<usize> = (1..=2 * n).filter(|x| !s.contains(x)).collect();
        for a in 0..rest.len() {
            for b in a + 1..rest.len() {
                for c in b + 1..rest.len() {
                    for d in c + 1..rest.len() {
                        let (a, b, c, d) = (rest[a], rest[b], rest[c], rest[d]);
                        total += 1;
                        let lhs = get(&s, [a, c]) * get(&s, [b, d]) % PRIME;
                        let rhs = (get(&s, [a, b]) * get(&s, [c, d]) + get(&s, [a, d]) * get(&s, [b, c])) % PRIME;
                        if lhs != rhs {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    (bad, total)
}

#[test]
fn flow_polynomials_satisfy_three_term_relations() {
    for n in 2..=4 {
        for seed in [3, 101] {
            let coords = coordinates(n, seed);
            let (bad, total) = failures(n, &coords);
            assert!(total > 0);
            assert_eq!(bad, 0, "n = {n}: {bad} of {total} relations fail");
        }
    }
}

#[test]
fn dropping_a_flow_breaks_the_relations() {
    // sanity check that the relations detect a missing term
    let mut coords = coordinates(3, 3);
    let key = vec![1, 4, 5];
    coords.insert(key.clone(), (coords[&key] + 1) % PRIME);
    let (bad, _) = failures(3, &coords);
    assert!(bad > 0);
}
