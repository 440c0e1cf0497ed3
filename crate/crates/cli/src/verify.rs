//! The `verify` subcommand: every check with its outcome.

use serde::Serialize;

use corect::equivalence::{
    build_matrix, check_blocks, is_unimodular, matched_partitions, verify_main_theorem, verify_maxdiag_additivity,
    verify_singleton_images, verify_valuation_additivity, Check, Level, HULL_CHECK_MAX,
};
use corect::partitions::{staircase_syt_count, IndexSet, Partition};
use corect::plabic::{perfect_orientations, PlabicGraph};
use corect::quiverfold::folded_matrix;
use corect::superpotential::{
    catalan, enumerate_antichains, gamma_hrep, linear_extension_count, StaircasePoset, LINEAR_EXTENSION_MAX,
};
use corect::valuation::{all_plucker_valuations, FLOW_CHECK_MAX};

use crate::render::with_budget;
use crate::VerifyLevel;

/// Largest n for which additivity is checked over every partition.
const ADDITIVITY_ALL_MAX: usize = 6;

#[derive(Serialize)]
pub struct Outcome {
    pub name: String,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct Report {
    pub n: usize,
    pub checks: Vec<Outcome>,
    /// Set when the hull comparison ran out of time.
    pub budget_exceeded: bool,
    pub all_ok: bool,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.checks.iter().any(|c| !c.ok) {
            1
        } else if self.budget_exceeded {
            3
        } else {
            0
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.ok { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}", c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
        if self.budget_exceeded {
            out.push_str("BUDGET hull comparison: time budget exceeded\n");
        }
        out
    }
}

struct Recorder {
    checks: Vec<Outcome>,
}

impl Recorder {
    fn check(&mut self, name: &str, result: corect::Result<Check>) {
        let (ok, detail) = match result {
            Ok(c) => (c.ok, c.witness),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Outcome { name: name.into(), ok, detail });
    }

    fn flag(&mut self, name: &str, result: corect::Result<(bool, String)>) {
        let (ok, detail) = match result {
            Ok((ok, d)) => (ok, Some(d)),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Outcome { name: name.into(), ok, detail });
    }
}

pub fn run(n: usize, level: VerifyLevel, budget: u64) -> Report {
    let mut r = Recorder { checks: Vec::new() };

    if level == VerifyLevel::All && n <= FLOW_CHECK_MAX {
        r.flag(
            "orientation with sources 1..n is unique",
            PlabicGraph::corect(n).and_then(|g| {
                let count = perfect_orientations(&g, &IndexSet::new((1..=n).collect(), n)?, 2).len();
                Ok((count == 1, format!("{count} found")))
            }),
        );
        r.flag(
            "flow valuations agree with maxdiag",
            all_plucker_valuations(n).map(|rows| (true, format!("{} classes", rows.len()))),
        );
    }
    r.flag(
        "gamma: tropical and chain-polytope descriptions agree",
        gamma_hrep(n).map(|h| (true, format!("{} rows", h.rows().len()))),
    );
    r.flag(
        "antichains counted by Catalan",
        StaircasePoset::new(n).map(|p| {
            let count = enumerate_antichains(&p).len();
            (count.to_string() == catalan(n + 1).to_string(), format!("{count}"))
        }),
    );
    if n <= LINEAR_EXTENSION_MAX {
        r.flag(
            "linear extensions counted by staircase tableaux",
            StaircasePoset::new(n)
                .and_then(|p| linear_extension_count(&p))
                .map(|c| (c == staircase_syt_count(n), c.to_string())),
        );
    }
    if n >= 2 {
        r.flag(
            "matrix blocks have the closed forms",
            build_matrix(n).and_then(|m| check_blocks(&m)).map(|b| {
                let detail = [&b.upper_left, &b.lower_right, &b.lower_left, &b.upper_right_bottom_row]
                    .iter()
                    .filter_map(|c| c.witness.clone())
                    .collect::<Vec<_>>()
                    .join("; ");
                (b.all_ok(), if detail.is_empty() { "4 blocks".into() } else { detail })
            }),
        );
    }
    r.flag(
        "matrix is unimodular",
        is_unimodular(n).map(|u| {
            (
                u.determinant_is_unit && u.reduction_is_lower_unitriangular,
                format!("det {}, reduction lower unitriangular: {}", u.determinant, u.reduction_is_lower_unitriangular),
            )
        }),
    );
    r.check("singleton antichains map to hook valuations", verify_singleton_images(n));
    let lambdas = if n <= ADDITIVITY_ALL_MAX { Partition::all_in_square(n) } else { matched_partitions(n) };
    r.check("maxdiag is additive over hook pieces", verify_maxdiag_additivity(n, &lambdas));
    r.check("valuations are additive over hook pieces", verify_valuation_additivity(n, &matched_partitions(n)));
    match verify_main_theorem(n, Level::Vertex) {
        Ok(rep) => {
            r.check("antichain images are matched valuations", Ok(rep.matching));
            r.check("antichain images are exactly the valuation points", Ok(rep.vertex_level));
        }
        Err(e) => r.check("main theorem at vertex level", Err(e)),
    }

    let mut budget_exceeded = false;
    if level != VerifyLevel::Vertex && n <= HULL_CHECK_MAX {
        match with_budget(budget, move || verify_main_theorem(n, Level::Hull)) {
            Ok(Ok(rep)) => {
                if let Some(c) = rep.hull_level {
                    r.check("image of gamma and delta have the same facets", Ok(c));
                }
                if let Some(c) = rep.volume_level {
                    let detail = format!(
                        "{} and {}, expected {}",
                        rep.volume_gamma.unwrap_or_default(),
                        rep.volume_delta.unwrap_or_default(),
                        rep.expected_volume
                    );
                    r.flag(
                        "normalized volumes equal the staircase tableaux count",
                        Ok((c.ok, c.witness.unwrap_or(detail))),
                    );
                }
            }
            Ok(Err(e)) => r.check("hull comparison", Err(e)),
            Err(_) => budget_exceeded = true,
        }
    }
    if level == VerifyLevel::All {
        r.flag(
            "folded exchange matrix is well defined",
            folded_matrix(n).map(|f| (true, format!("{}x{}", f.entries.len(), f.mutable))),
        );
    }

    let all_ok = r.checks.iter().all(|c| c.ok) && !budget_exceeded;
    Report { n, checks: r.checks, budget_exceeded, all_ok }
}
