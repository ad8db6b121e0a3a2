use std::collections::HashMap;

use serde::Serialize;

use super::{step, RewriteError, RuleTag, Step, Strategy};
use crate::syntax::{canon, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub m: usize,
    pub e: usize,
    pub beta_v: usize,
    pub beta_i: usize,
}

impl RuleCounts {
    pub fn of(trace: &[Step]) -> Self {
        let mut c = RuleCounts::default();
        for s in trace {
            match s.rule {
                RuleTag::M => c.m += 1,
                RuleTag::E => c.e += 1,
                RuleTag::BetaV => c.beta_v += 1,
                RuleTag::BetaI => c.beta_i += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.m + self.e + self.beta_v + self.beta_i
    }
}

/// Result of fuel-bounded deterministic evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Outcome {
    Normal {
        result: Term,
        trace: Vec<Step>,
        counts: RuleCounts,
    },
    /// The last reduct of `prefix` is α-equal to the trace term at index
    /// `loop_start` (index 0 is the start term).
    Cycle { prefix: Vec<Step>, loop_start: usize },
    Exhausted { trace: Vec<Step> },
}

impl Outcome {
    pub fn trace(&self) -> &[Step] {
        match self {
            Outcome::Normal { trace, .. } => trace,
            Outcome::Cycle { prefix, .. } => prefix,
            Outcome::Exhausted { trace } => trace,
        }
    }

    pub fn normal_form(&self) -> Option<&Term> {
        match self {
            Outcome::Normal { result, .. } => Some(result),
            _ => None,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, Outcome::Cycle { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Normal { .. } => "normal",
            Outcome::Cycle { .. } => "cycle",
            Outcome::Exhausted { .. } => "exhausted",
        }
    }
}

/// Leftmost-outermost evaluation for at most `fuel` steps, stopping early
/// when a term recurs up to α.
pub fn evaluate(t: &Term, s: Strategy, fuel: usize) -> Result<Outcome, RewriteError> {
    let mut seen: HashMap<Term, usize> = HashMap::new();
    seen.insert(canon(t), 0);
    let mut trace: Vec<Step> = Vec::new();
    let mut cur = t.clone();
    loop {
        let Some(st) = step(&cur, s)? else {
            let counts = RuleCounts::of(&trace);
            return Ok(Outcome::Normal {
                result: cur,
                trace,
                counts,
            });
        };
        if trace.len() == fuel {
            return Ok(Outcome::Exhausted { trace });
        }
        cur = st.reduct.clone();
        trace.push(st);
        let key = canon(&cur);
        if let Some(&loop_start) = seen.get(&key) {
            return Ok(Outcome::Cycle {
                prefix: trace,
                loop_start,
            });
        }
        seen.insert(key, trace.len());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term;

    const OMEGA: &str = r"((\x.x x) (\x.x x))";

    #[test]
    fn omega_cycles_through_an_es() {
        let out = evaluate(&term(OMEGA), Strategy::Vsc, 100).unwrap();
        match out {
            Outcome::Cycle { prefix, loop_start } => {
                assert_eq!(loop_start, 0);
                let rules: Vec<_> = prefix.iter().map(|s| s.rule).collect();
                assert_eq!(rules, [RuleTag::M, RuleTag::E]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fire_erases_an_inert_argument() {
        let u = term(&format!(r"(\x.\i.i) (y (\z.{OMEGA}))"));
        let out = evaluate(&u, Strategy::Fire, 10).unwrap();
        let Outcome::Normal { result, counts, .. } = out else { panic!() };
        assert_eq!(result, term(r"\i.i"));
        assert_eq!((counts.beta_i, counts.total()), (1, 1));
        assert!(evaluate(&u, Strategy::External, 100).unwrap().is_cycle());
    }

    #[test]
    fn plotkin_is_stuck_on_a_false_normal_form() {
        let omega_l = term(r"(\x.\x.x x) (y y) (\x.x x)");
        let out = evaluate(&omega_l, Strategy::Plotkin, 100).unwrap();
        assert_eq!(out.normal_form(), Some(&omega_l));
    }

    #[test]
    fn fuel_is_respected() {
        let big = term(r"(\x.x) ((\x.x) ((\x.x) (\x.x)))");
        assert!(matches!(
            evaluate(&big, Strategy::Plotkin, 2).unwrap(),
            Outcome::Exhausted { ref trace } if trace.len() == 2
        ));
        assert!(evaluate(&big, Strategy::Plotkin, 3).unwrap().normal_form().is_some());
    }
}
