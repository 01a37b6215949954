//! Differential-testing harness: the tableau engine against the brute-force
//! oracle on batches of random formulas.
//!
//! Formula generation is sequential and index-deterministic; checking the
//! batch fans out to worker threads when the `parallel` feature is on, and
//! the reported results are identical either way.

use crate::formula::{render, Formula};
use crate::generate::generate_indexed;
use crate::model::{check_model_wellformed, verify_model};
use crate::oracle::{oracle_sat, OracleError, OracleVerdict};
use crate::tableau::{
    branch_application_bound, branch_rule_applications, decide, Mode, Options, Verdict,
};

/// Batch parameters. Generation walks the seed's index stream and keeps the
/// first `count` formulas that pass the size filter.
#[derive(Debug, Clone)]
pub struct BatchConfig {
    pub count: usize,
    pub atoms: usize,
    pub max_depth: usize,
    pub seed: u64,
    /// Drop generated formulas larger than this many nodes.
    pub max_size: Option<usize>,
    pub options: Options,
}

impl BatchConfig {
    pub fn new(count: usize, atoms: usize, max_depth: usize, seed: u64) -> BatchConfig {
        BatchConfig {
            count,
            atoms,
            max_depth,
            seed,
            max_size: None,
            options: Options::default(),
        }
    }
}

/// Engine-versus-oracle result for one formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Agree { satisfiable: bool },
    Disagree { engine_sat: bool, oracle_sat: bool },
    /// The oracle refused the formula (capacity guard).
    Skipped { reason: String },
    /// Engine invariant violation or rejected witness.
    Error { message: String },
}

#[derive(Debug, Clone)]
pub struct CheckedFormula {
    pub index: u64,
    pub formula: Formula,
    pub outcome: CheckOutcome,
}

#[derive(Debug, Clone, Default)]
pub struct BatchReport {
    pub checked: Vec<CheckedFormula>,
}

impl BatchReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &CheckedFormula> {
        self.checked
            .iter()
            .filter(|c| matches!(c.outcome, CheckOutcome::Disagree { .. }))
    }

    pub fn errors(&self) -> impl Iterator<Item = &CheckedFormula> {
        self.checked
            .iter()
            .filter(|c| matches!(c.outcome, CheckOutcome::Error { .. }))
    }

    pub fn skipped(&self) -> usize {
        self.checked
            .iter()
            .filter(|c| matches!(c.outcome, CheckOutcome::Skipped { .. }))
            .count()
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements().next().is_none() && self.errors().next().is_none()
    }

    pub fn summary(&self) -> String {
        format!(
            "checked: {}, disagreements: {}, errors: {}, skipped: {}",
            self.checked.len(),
            self.disagreements().count(),
            self.errors().count(),
            self.skipped()
        )
    }
}

/// Generates the batch for `config`. Indices that fail the size filter are
/// skipped, so the result depends only on the seed and the filter.
pub fn generate_batch(config: &BatchConfig) -> Vec<(u64, Formula)> {
    let mut out = Vec::with_capacity(config.count);
    let mut index = 0u64;
    while out.len() < config.count {
        let f = generate_indexed(config.atoms, config.max_depth, config.seed, index);
        if config.max_size.is_none_or(|max| f.size() <= max) {
            out.push((index, f));
        }
        index += 1;
    }
    out
}

/// Satisfiability check of one formula: engine verdict, oracle verdict,
/// model sanity on the satisfiable side, and the termination bound.
pub fn check_formula(f: &Formula, options: &Options) -> CheckOutcome {
    let verdict = match decide(f, Mode::Satisfiability, options) {
        Ok(v) => v,
        Err(e) => {
            return CheckOutcome::Error {
                message: format!("engine: {e} on {}", render(f)),
            }
        }
    };
    let bound = branch_application_bound(f);
    if let Some(&worst) = branch_rule_applications(verdict.proof()).iter().max() {
        if worst > bound {
            return CheckOutcome::Error {
                message: format!("branch used {worst} applications, bound {bound}"),
            };
        }
    }
    if let Verdict::Satisfiable {
        model, valuation, ..
    } = &verdict
    {
        if !check_model_wellformed(model) {
            return CheckOutcome::Error {
                message: format!("extracted model violates the conditions on {}", render(f)),
            };
        }
        if verify_model(model, &valuation.atom_assignments(), f) != Ok(true) {
            return CheckOutcome::Error {
                message: format!("extracted model does not satisfy {}", render(f)),
            };
        }
    }
    let engine_sat = matches!(verdict, Verdict::Satisfiable { .. });
    match oracle_sat(f) {
        Ok(oracle) => {
            let oracle_sat = oracle.is_satisfiable();
            if let OracleVerdict::Satisfiable { model, atom_values } = &oracle {
                if !check_model_wellformed(model)
                    || verify_model(model, atom_values, f) != Ok(true)
                {
                    return CheckOutcome::Error {
                        message: format!("oracle witness is unsound on {}", render(f)),
                    };
                }
            }
            if engine_sat == oracle_sat {
                CheckOutcome::Agree {
                    satisfiable: engine_sat,
                }
            } else {
                CheckOutcome::Disagree {
                    engine_sat,
                    oracle_sat,
                }
            }
        }
        Err(OracleError::WitnessRejected(message)) => CheckOutcome::Error { message },
        Err(guard) => CheckOutcome::Skipped {
            reason: guard.to_string(),
        },
    }
}

/// Runs the whole differential batch.
pub fn run_batch(config: &BatchConfig) -> BatchReport {
    let formulas = generate_batch(config);

    #[cfg(feature = "parallel")]
    let checked = {
        use rayon::prelude::*;
        formulas
            .par_iter()
            .map(|(index, f)| CheckedFormula {
                index: *index,
                formula: f.clone(),
                outcome: check_formula(f, &config.options),
            })
            .collect()
    };

    #[cfg(not(feature = "parallel"))]
    let checked = formulas
        .iter()
        .map(|(index, f)| CheckedFormula {
            index: *index,
            formula: f.clone(),
            outcome: check_formula(f, &config.options),
        })
        .collect();

    BatchReport { checked }
}
