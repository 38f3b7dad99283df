//! Round-by-round Pareto search over protocol compositions.
//!
//! `S_0 = {eps0}`. Each round applies every enabled protocol to every
//! input (or ordered input pair) drawn from the current set, then prunes to
//! the non-dominated staircase. After `q` rounds the set holds the front of
//! all expressions of depth `<= q`: error and cost of a composite are
//! monotone in those of its inputs, so a dominated input never yields a
//! non-dominated output.

use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{ProtocolKind, MAX_HCODE_K};

use super::eval::{evaluate_with, CompiledProtocol, EvalOptions, ProtocolEval};
use super::expr::ProtocolExpr;

pub const MAX_ROUNDS: usize = 5;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_CAP: usize = 8192;
pub const DEFAULT_MAX_BH_K: u64 = 40;

/// Which protocol families the search may compose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Families {
    pub bk: bool,
    pub mek: bool,
    pub bh: bool,
    pub h1: bool,
    pub ml: bool,
}

impl Families {
    pub const ALL: Families = Families {
        bk: true,
        mek: true,
        bh: true,
        h1: true,
        ml: true,
    };
    pub const NONE: Families = Families {
        bk: false,
        mek: false,
        bh: false,
        h1: false,
        ml: false,
    };
    /// 15-to-1 only.
    pub const BK: Families = Families {
        bk: true,
        ..Families::NONE
    };
    /// Everything available before 10-to-2 triorthogonal codes.
    pub const UP_TO_MEK: Families = Families {
        bk: true,
        mek: true,
        ..Families::NONE
    };
    pub const UP_TO_BH: Families = Families {
        bk: true,
        mek: true,
        bh: true,
        ..Families::NONE
    };

    /// Parses a comma-separated list such as `"bk,mek,ml"`, or `"all"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut f = Families::NONE;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.to_ascii_lowercase().as_str() {
                "all" => f = Families::ALL,
                "bk" => f.bk = true,
                "mek" => f.mek = true,
                "bh" => f.bh = true,
                "h1" => f.h1 = true,
                "ml" => f.ml = true,
                other => return Err(Error::usage(format!("unknown protocol family {other:?}"))),
            }
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub eps0: f64,
    pub max_rounds: usize,
    /// Largest `k` for one-level and multilevel H-codes.
    pub max_k: u64,
    /// Largest `k` for triorthogonal codes.
    pub max_bh_k: u64,
    /// Concatenation levels searched for multilevel codes.
    pub ml_levels: Vec<u32>,
    pub families: Families,
    pub tolerance: f64,
    pub cap: usize,
    pub eval: EvalOptions,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            eps0: 0.01,
            max_rounds: MAX_ROUNDS,
            max_k: MAX_HCODE_K,
            max_bh_k: DEFAULT_MAX_BH_K,
            ml_levels: vec![2, 3, 4],
            families: Families::ALL,
            tolerance: DEFAULT_TOLERANCE,
            cap: DEFAULT_CAP,
            eval: EvalOptions::default(),
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.max_rounds > MAX_ROUNDS {
            return Err(Error::usage(format!("at most {MAX_ROUNDS} rounds")));
        }
        if self.max_k > MAX_HCODE_K {
            return Err(Error::usage(format!(
                "H-code k is limited to {MAX_HCODE_K}"
            )));
        }
        if self.ml_levels.iter().any(|t| !(2..=4).contains(t)) {
            return Err(Error::usage("multilevel levels must lie in [2, 4]"));
        }
        if self.cap < 2 {
            return Err(Error::usage("set cap must be at least 2"));
        }
        Ok(())
    }

    /// Protocol instances the search may apply, in a fixed order.
    pub fn protocols(&self) -> Result<Vec<CompiledProtocol>> {
        let mut kinds = Vec::new();
        let f = &self.families;
        if f.bk {
            kinds.push(ProtocolKind::Bk);
        }
        if f.mek {
            kinds.push(ProtocolKind::Mek);
        }
        if f.bh {
            kinds.extend(
                (2..=self.max_bh_k)
                    .step_by(2)
                    .map(|k| ProtocolKind::Bh { k }),
            );
        }
        if f.h1 {
            kinds.extend((2..=self.max_k).step_by(2).map(|k| ProtocolKind::H1 { k }));
        }
        if f.ml {
            for &t in &self.ml_levels {
                kinds.extend(
                    (2..=self.max_k)
                        .step_by(2)
                        .map(|k| ProtocolKind::Ml { t, k }),
                );
            }
        }
        kinds
            .into_iter()
            .map(|k| CompiledProtocol::new(k, &self.eval))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParetoEntry {
    pub eval: ProtocolEval,
    #[serde(serialize_with = "serialize_expr")]
    pub expr: Arc<ProtocolExpr>,
}

fn serialize_expr<S: serde::Serializer>(
    e: &Arc<ProtocolExpr>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

/// Non-dominated entries sorted by increasing `eps_out` (and so strictly
/// decreasing cost).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParetoSet {
    pub eps0: f64,
    pub entries: Vec<ParetoEntry>,
}

impl ParetoSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks the staircase shape.
    pub fn is_staircase(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[0].eval.eps_out < w[1].eval.eps_out && w[0].eval.cost > w[1].eval.cost)
    }
}

/// Candidate before its expression is materialised.
#[derive(Clone, Copy, Debug)]
struct Cand {
    eval: ProtocolEval,
    /// protocol index, or usize::MAX for carried-over entries
    proto: usize,
    a: usize,
    b: usize,
}

fn cmp_eval(x: &ProtocolEval, y: &ProtocolEval) -> Ordering {
    x.eps_out
        .total_cmp(&y.eps_out)
        .then(x.cost.total_cmp(&y.cost))
}

/// Keeps entries that are strictly cheaper (beyond `tol`) than every entry
/// with lower error. Input must already be sorted.
fn sweep<T>(sorted: Vec<T>, eval: impl Fn(&T) -> ProtocolEval, tol: f64) -> Vec<T> {
    let mut out = Vec::new();
    let mut best = f64::INFINITY;
    for c in sorted {
        let cost = eval(&c).cost;
        if cost < best * (1.0 - tol) {
            best = cost;
            out.push(c);
        }
    }
    out
}

/// Thins an over-full staircase to `cap` entries, spreading survivors
/// evenly in `log10(eps)` and always keeping both ends.
fn thin(entries: Vec<ParetoEntry>, cap: usize) -> Vec<ParetoEntry> {
    if entries.len() <= cap {
        return entries;
    }
    let lo = entries[0].eval.eps_out.log10();
    let hi = entries[entries.len() - 1].eval.eps_out.log10();
    let step = (hi - lo) / (cap - 1) as f64;
    let mut keep = vec![false; entries.len()];
    let mut j = 0;
    for slot in 0..cap {
        let target = lo + step * slot as f64;
        // first entry at or above the slot's grid point: lowest cost
        // among those with error below the next point
        while j + 1 < entries.len() && entries[j + 1].eval.eps_out.log10() <= target {
            j += 1;
        }
        keep[j] = true;
    }
    keep[0] = true;
    let last = entries.len() - 1;
    keep[last] = true;
    entries
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect()
}

pub fn pareto_search(cfg: &SearchConfig) -> Result<ParetoSet> {
    cfg.validate()?;
    let source = ProtocolEval::source(cfg.eps0);
    evaluate_with(&ProtocolExpr::Source, cfg.eps0, &cfg.eval)?;
    let protocols = cfg.protocols()?;
    let mut set = vec![ParetoEntry {
        eval: source,
        expr: Arc::new(ProtocolExpr::Source),
    }];

    for _round in 0..cfg.max_rounds {
        let current = &set;
        let work: Vec<(usize, usize)> = (0..protocols.len())
            .flat_map(|p| (0..current.len()).map(move |a| (p, a)))
            .collect();
        let fronts: Vec<Vec<Cand>> = work
            .par_iter()
            .map(|&(p, a)| {
                let proto = &protocols[p];
                let ea = &current[a].eval;
                let mut local = Vec::new();
                if proto.kind().is_two_source() {
                    for (b, eb) in current.iter().enumerate() {
                        if let Ok(ev) = proto.apply(ea, &eb.eval) {
                            local.push(Cand {
                                eval: ev,
                                proto: p,
                                a,
                                b,
                            });
                        }
                    }
                } else if let Ok(ev) = proto.apply(ea, ea) {
                    local.push(Cand {
                        eval: ev,
                        proto: p,
                        a,
                        b: a,
                    });
                }
                local.sort_by(|x, y| cmp_eval(&x.eval, &y.eval).then(x.b.cmp(&y.b)));
                sweep(local, |c| c.eval, cfg.tolerance)
            })
            .collect();

        let mut all: Vec<Cand> = fronts.into_iter().flatten().collect();
        all.extend(current.iter().enumerate().map(|(i, e)| Cand {
            eval: e.eval,
            proto: usize::MAX,
            a: i,
            b: i,
        }));
        let build = |c: &Cand| -> Arc<ProtocolExpr> {
            if c.proto == usize::MAX {
                return current[c.a].expr.clone();
            }
            let kind = protocols[c.proto].kind();
            let e = if kind.is_two_source() {
                ProtocolExpr::Double {
                    kind,
                    logical: current[c.a].expr.clone(),
                    physical: current[c.b].expr.clone(),
                }
            } else {
                ProtocolExpr::Single {
                    kind,
                    input: current[c.a].expr.clone(),
                }
            };
            Arc::new(e)
        };
        // ties on (eps, cost) fall back to shorter, then lexicographically
        // smaller serialisation
        all.sort_by(|x, y| {
            cmp_eval(&x.eval, &y.eval).then_with(|| {
                let (sx, sy) = (build(x).to_string(), build(y).to_string());
                sx.len().cmp(&sy.len()).then(sx.cmp(&sy))
            })
        });
        let kept = sweep(all, |c| c.eval, cfg.tolerance);
        let next: Vec<ParetoEntry> = kept
            .iter()
            .map(|c| ParetoEntry {
                eval: c.eval,
                expr: build(c),
            })
            .collect();
        set = thin(next, cfg.cap);
    }

    Ok(ParetoSet {
        eps0: cfg.eps0,
        entries: set,
    })
}

/// Cheapest entry with `eps_out <= target`.
pub fn query(set: &ParetoSet, target_eps: f64) -> Result<&ParetoEntry> {
    set.entries
        .iter()
        .filter(|e| e.eval.eps_out <= target_eps)
        .min_by(|x, y| x.eval.cost.total_cmp(&y.eval.cost))
        .ok_or_else(|| {
            Error::Unreachable(format!(
                "no protocol reaches eps_out <= {target_eps:e} within the search bounds"
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(families: Families, rounds: usize) -> ParetoSet {
        pareto_search(&SearchConfig {
            families,
            max_rounds: rounds,
            ..SearchConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn empty_families_leave_only_source() {
        let s = quick(Families::NONE, 5);
        assert_eq!(s.len(), 1);
        assert_eq!(*s.entries[0].expr, ProtocolExpr::Source);
    }

    #[test]
    fn fifteen_to_one_column() {
        let s = quick(Families::BK, 3);
        let e = query(&s, 1e-4).unwrap();
        assert_eq!(e.expr.to_string(), "BK(eps0)");
        assert!((e.eval.cost - 17.44).abs() / 17.44 < 0.01);
        let e = query(&s, 1e-5).unwrap();
        assert_eq!(e.expr.to_string(), "BK(BK(eps0))");
        assert!((e.eval.cost - 261.5).abs() / 261.5 < 0.02);
    }

    #[test]
    fn source_answers_loose_targets() {
        let s = quick(Families::BK, 1);
        let e = query(&s, 0.5).unwrap();
        assert_eq!(e.eval.cost, 1.0);
        assert!(matches!(query(&s, 1e-30), Err(Error::Unreachable(_))));
    }

    #[test]
    fn staircase_and_reproducible_entries() {
        let cfg = SearchConfig {
            max_rounds: 3,
            ..SearchConfig::default()
        };
        let s = pareto_search(&cfg).unwrap();
        assert!(s.is_staircase());
        for e in &s.entries {
            let again = evaluate_with(&e.expr, cfg.eps0, &cfg.eval).unwrap();
            assert_eq!(again, e.eval, "{}", e.expr);
            assert!(e.expr.depth() <= 3);
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!(Families::parse("all").unwrap(), Families::ALL);
        assert_eq!(Families::parse("bk, mek").unwrap(), Families::UP_TO_MEK);
        assert_eq!(Families::parse("").unwrap(), Families::NONE);
        assert!(Families::parse("toffoli").is_err());
    }

    #[test]
    fn config_bounds() {
        let bad = [
            SearchConfig {
                max_rounds: 6,
                ..SearchConfig::default()
            },
            SearchConfig {
                max_k: 22,
                ..SearchConfig::default()
            },
            SearchConfig {
                ml_levels: vec![5],
                ..SearchConfig::default()
            },
        ];
        for cfg in bad {
            assert!(pareto_search(&cfg).is_err());
        }
    }

    #[test]
    fn thinning_keeps_ends() {
        let entries: Vec<ParetoEntry> = (0..100)
            .map(|i| ParetoEntry {
                eval: ProtocolEval {
                    eps_out: 10f64.powi(-(100 - i)),
                    cost: (200 - i) as f64,
                    accept: 1.0,
                },
                expr: Arc::new(ProtocolExpr::Source),
            })
            .collect();
        let t = thin(entries.clone(), 10);
        assert!(t.len() <= 11);
        assert_eq!(t.first(), entries.first());
        assert_eq!(t.last(), entries.last());
    }
}
