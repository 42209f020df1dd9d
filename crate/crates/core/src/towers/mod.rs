//! Congruence towers: H¹ level by level, growth fits and the finite criteria.

mod constant;
mod criteria;
mod tower;

pub use constant::{check_delta_constant, delta_constant_interval, ConstantCheck};
pub use criteria::{
    check_analytic, check_boston_ellenberg, check_coimage, check_saving, saving_threshold, uniform_index, Criterion,
    CriterionReport, Verdict,
};
pub use tower::{
    fitted_exponent, run_tower, tower_family, TowerLevel, TowerOptions, TowerReport, TowerTemplate, TowerType,
    Truncation,
};
