//! Scoring reconstructions against the hidden embedding, seeded batches of
//! trials, and the diagnostics written next to single-shot outputs.

mod experiment;
mod metrics;

pub use experiment::{
    run_experiment, run_trial, summary_path, Aggregates, ExperimentConfig, ExperimentReport, Mode,
    TrialRow, CSV_HEADER,
};
pub use metrics::{edge_symmetric_difference, min_non_edge_length, quality_q};

use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::instance::InstanceError;
use crate::order_reconstruct::RankCase;
use crate::placement::{CornerInfo, PlacementCase, ReconstructError, ReconstructionResult};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("invalid experiment config: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `key=value` diagnostics for a single reconstruction.
pub fn diagnostics(result: &ReconstructionResult) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k}={v}");
    };
    if let Some(est) = &result.r_estimate {
        kv("r_hat", est.r_hat.to_string());
        kv("m", est.m_observed.to_string());
        kv("rho_hat", est.rho_hat.to_string());
        kv("r_hat_saturated", est.saturated.to_string());
    }
    let v = result.corners.vertices();
    kv(
        "corner_vertices",
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
    );
    match &result.corners {
        CornerInfo::Graph(a) => {
            kv("degree_tie", a.degree_tie.to_string());
            kv("distance_tie", a.distance_tie.to_string());
        }
        CornerInfo::Orders(o) => {
            kv("off_diagonal_vertex", o.off_diagonal.to_string());
            kv("threshold_met", o.threshold_met.to_string());
            let count = |c| {
                result
                    .placements
                    .iter()
                    .filter(|p| p.rank_case == Some(c))
                    .count()
            };
            kv("case1", count(RankCase::One).to_string());
            kv("case2", count(RankCase::Two).to_string());
        }
    }
    if let Some(w) = result.annulus_half_width {
        kv("annulus_half_width", w.to_string());
    }
    for case in PlacementCase::ALL {
        kv(
            &format!("count.{}", case.tag()),
            result.case_count(case).to_string(),
        );
    }
    kv("failures", result.failures.len().to_string());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_reconstruct::reconstruct_from_graph;
    use crate::instance::{build_graph, sample_embedding};

    #[test]
    fn diagnostics_keys() {
        let e = sample_embedding(600, 5).unwrap();
        let g = build_graph(&e, 5.0).unwrap();
        let res = reconstruct_from_graph(&g).unwrap();
        let d = diagnostics(&res);
        for key in ["r_hat=", "m=", "corner_vertices=", "count.corner=4", "failures="] {
            assert!(d.contains(key), "missing {key} in\n{d}");
        }
        let total: usize = d
            .lines()
            .filter(|l| l.starts_with("count."))
            .map(|l| l.split('=').nth(1).unwrap().parse::<usize>().unwrap())
            .sum();
        assert_eq!(total, 600);
    }
}
