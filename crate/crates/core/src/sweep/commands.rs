use crate::error::{Error, Result};
use crate::kernels::Probability;
use crate::measures::{mutual_information, GoodDecoherencePolicy};
use crate::model::CouplingParams;
use crate::photon::{map_photon_time, photon_mutual_information, series_mutual_information, PhotonParams, SeriesControl};
use crate::plateau::{delta_m_ratio, m_delta, universality_deltas};

use super::{Cell, SweepConfig, Table};

const OK: &str = "ok";

/// Columns fixed for a row whose computation failed.
fn failed(width: usize, err: &Error) -> Vec<Cell> {
    let mut row = vec![Cell::Empty; width];
    row.push(Cell::from(err.tag()));
    row
}

/// `m` followed by one column per requested measure. The good-decoherence
/// forms are evaluated unconditionally.
pub fn curve(config: &SweepConfig) -> Result<Table> {
    let mut columns = vec!["m".to_string()];
    columns.extend(config.measures.iter().map(|k| k.column().to_string()));
    let mut table = Table::new(columns);
    let policy = GoodDecoherencePolicy::force();
    for m in config.m_values() {
        let mut row = vec![Cell::from(m)];
        for kind in &config.measures {
            row.push(Cell::from(kind.evaluate(&config.params, m, &policy)?));
        }
        table.push(row);
    }
    Ok(table)
}

/// Redundancy reports over `c2 x delta x p x measure`. Rows whose plateau
/// is degenerate or unreachable carry the error tag in `status`.
pub fn redundancy(config: &SweepConfig) -> Result<Table> {
    let mut table = Table::new(["c2", "delta", "p", "measure", "m_int", "m_cont", "R", "status"]);
    let n = config.params.n();
    for ov in &config.overlap_grid {
        for &delta in &config.delta_grid {
            for &p in &config.p_grid {
                let params = CouplingParams::new(n, Probability::new(p)?, *ov)?;
                for &kind in &config.measures {
                    let head = vec![
                        Cell::from(ov.c2()),
                        Cell::from(delta),
                        Cell::from(p),
                        Cell::from(kind.tag()),
                    ];
                    let tail = match m_delta(&params, delta, kind) {
                        Ok(rep) => vec![
                            Cell::from(rep.m_int),
                            Cell::from(rep.m_cont),
                            Cell::from(rep.r),
                            Cell::from(OK),
                        ],
                        Err(e @ (Error::NoPlateau { .. } | Error::PlateauDegenerate { .. })) => {
                            failed(3, &e)
                        }
                        Err(e) => return Err(e),
                    };
                    table.push(head.into_iter().chain(tail).collect());
                }
            }
        }
    }
    Ok(table)
}

/// Large-`N` fragment-size ratio over `p x delta`.
pub fn ratio_table(config: &SweepConfig) -> Result<Table> {
    let mut table = Table::new(["p", "delta", "ratio", "status"]);
    for &p in &config.p_grid {
        for &delta in &config.delta_grid {
            let tail = match delta_m_ratio(Probability::new(p)?, delta) {
                Ok(r) => vec![Cell::from(r), Cell::from(OK)],
                Err(e @ (Error::Domain { .. } | Error::ConvergenceFailure(_))) => failed(1, &e),
                Err(e) => return Err(e),
            };
            let mut row = vec![Cell::from(p), Cell::from(delta)];
            row.extend(tail);
            table.push(row);
        }
    }
    Ok(table)
}

/// `Delta_I` and `Delta_chi` over `m x p'`.
pub fn universality(config: &SweepConfig) -> Result<Table> {
    let mut table = Table::new(["m", "p_prime", "delta_i", "delta_chi", "status"]);
    for m in config.m_values() {
        for &pp in &config.p_grid {
            let tail = match universality_deltas(&config.params, pp, m) {
                Ok(d) => vec![Cell::from(d.delta_i), Cell::from(d.delta_chi), Cell::from(OK)],
                Err(e @ (Error::PlateauDegenerate { .. } | Error::Domain { .. })) => failed(2, &e),
                Err(e) => return Err(e),
            };
            let mut row = vec![Cell::from(m), Cell::from(pp)];
            row.extend(tail);
            table.push(row);
        }
    }
    Ok(table)
}

/// Closed form, model series and mapped photon series of the mutual
/// information for each `m`, with their absolute differences.
pub fn photon(config: &SweepConfig) -> Result<Table> {
    let mut table = Table::new([
        "m",
        "f",
        "i_closed",
        "i_series",
        "i_photon",
        "diff_series",
        "diff_photon",
        "status",
    ]);
    let ctl = SeriesControl::default();
    let params = &config.params;
    let n = params.n();
    let time = map_photon_time(params);
    for m in config.m_values() {
        let f = m as f64 / n as f64;
        let closed = mutual_information(params, m)?;
        let mut status = OK;
        let series = match series_mutual_information(params, m, &ctl) {
            Ok(v) => Some(v),
            Err(e @ Error::ConvergenceFailure(_)) => {
                status = e.tag();
                None
            }
            Err(e) => return Err(e),
        };
        let photon = match &time {
            Ok(t) => match photon_mutual_information(&PhotonParams::new(params.p(), *t, f)?, &ctl) {
                Ok(v) => Some(v),
                Err(e @ Error::ConvergenceFailure(_)) => {
                    status = e.tag();
                    None
                }
                Err(e) => return Err(e),
            },
            Err(e) => {
                status = e.tag();
                None
            }
        };
        table.push(vec![
            Cell::from(m),
            Cell::from(f),
            Cell::from(closed),
            Cell::from(series),
            Cell::from(photon),
            Cell::from(series.map(|v| (v - closed).abs())),
            Cell::from(photon.map(|v| (v - closed).abs())),
            Cell::from(status),
        ]);
    }
    Ok(table)
}
