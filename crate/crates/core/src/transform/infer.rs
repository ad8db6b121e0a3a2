use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::normal::{type_fireball_open, type_fireball_shrinking};
use super::subject::{subject_expand, TypedStep};
use super::Result;
use crate::rewrite::{evaluate, Outcome, Strategy};
use crate::syntax::Term;
use crate::types::Derivation;

/// Which typing to synthesize: any derivation (via open evaluation) or a
/// shrinking one (via external evaluation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Open,
    Shrinking,
}

impl Mode {
    pub fn strategy(self) -> Strategy {
        match self {
            Mode::Open => Strategy::Open,
            Mode::Shrinking => Strategy::External,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Open => "open",
            Mode::Shrinking => "shrinking",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "open" => Ok(Mode::Open),
            "shrinking" => Ok(Mode::Shrinking),
            _ => Err(format!("unknown mode {s:?} (expected open or shrinking)")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Inference {
    /// Evaluation terminated; the normal form was typed and the typing
    /// pulled back along the trace.
    Derived { derivation: Derivation, evaluation: Outcome },
    /// Evaluation provably diverges: it revisited a term.
    Diverges { evaluation: Outcome },
    /// Fuel ran out before either happened.
    Unknown { evaluation: Outcome },
}

impl Inference {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            Inference::Derived { derivation, .. } => Some(derivation),
            _ => None,
        }
    }

    pub fn evaluation(&self) -> &Outcome {
        match self {
            Inference::Derived { evaluation, .. }
            | Inference::Diverges { evaluation }
            | Inference::Unknown { evaluation } => evaluation,
        }
    }
}

/// Evaluates `t`, types the normal form and subject-expands back to `t`.
pub fn infer(t: &Term, mode: Mode, fuel: usize) -> Result<Inference> {
    let evaluation = evaluate(t, mode.strategy(), fuel)?;
    let Some(nf) = evaluation.normal_form() else {
        return Ok(match evaluation {
            Outcome::Cycle { .. } => Inference::Diverges { evaluation },
            _ => Inference::Unknown { evaluation },
        });
    };
    let mut d = match mode {
        Mode::Open => type_fireball_open(nf)?,
        Mode::Shrinking => type_fireball_shrinking(nf)?,
    };
    let trace = evaluation.trace();
    for (i, st) in trace.iter().enumerate().rev() {
        let before = if i == 0 { t } else { &trace[i - 1].reduct };
        d = subject_expand(&d, &TypedStep::new(before.clone(), st.clone()))?;
    }
    Ok(Inference::Derived { derivation: d, evaluation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;
    use crate::types::{check_derivation, deriv_size, is_shrinking};

    #[test]
    fn sizes_bound_evaluation_lengths() {
        for s in [r"(\x.x x) (\y.y)", r"(\x.\y.x) z w", r"((\a.a) (\b.b)) ((\c.c) (\d.d))", r"x ((\y.y) z)"] {
            let t = term(s);
            for mode in [Mode::Open, Mode::Shrinking] {
                let inf = infer(&t, mode, 100).unwrap();
                let d = inf.derivation().unwrap_or_else(|| panic!("{s} under {mode}"));
                check_derivation(d).unwrap();
                assert_eq!(d.subject(), &t);
                let counts = crate::rewrite::RuleCounts::of(inf.evaluation().trace());
                match mode {
                    Mode::Open => assert!(counts.m <= deriv_size(d), "{s}"),
                    Mode::Shrinking => {
                        assert!(is_shrinking(d));
                        assert!(counts.total() <= deriv_size(d), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn divergence_and_fuel() {
        let omega = term(r"(\x.x x) (\x.x x)");
        assert!(matches!(infer(&omega, Mode::Open, 100).unwrap(), Inference::Diverges { .. }));
        let t = term(r"(\x.x) ((\x.x) (\x.x))");
        assert!(matches!(infer(&t, Mode::Open, 1).unwrap(), Inference::Unknown { .. }));
        let under = term(r"\z.(\x.x x) (\x.x x)");
        assert!(infer(&under, Mode::Open, 100).unwrap().derivation().is_some());
        assert!(matches!(infer(&under, Mode::Shrinking, 100).unwrap(), Inference::Diverges { .. }));
    }
}
