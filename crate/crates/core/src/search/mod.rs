//! Composition of distillation protocols and the cost-optimal search.

pub mod eval;
pub mod expr;
pub mod fit;
pub mod pareto;
pub mod sizing;

pub use eval::{evaluate, evaluate_with, CompiledProtocol, EvalOptions, ProtocolEval};
pub use expr::ProtocolExpr;
pub use fit::{cost_curve, fit_cost_curve, fit_points, CurvePoint, FitResult};
pub use pareto::{pareto_search, query, Families, ParetoEntry, ParetoSet, SearchConfig};
pub use sizing::{asymptotic_ratio_check, total_input_count, RoundRatio};
