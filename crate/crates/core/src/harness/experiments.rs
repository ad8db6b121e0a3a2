use std::fmt::Write as _;

use serde::Serialize;

use super::HarnessError;
use crate::rewrite::{evaluate, is_normal, redexes, Outcome, RuleTag, Strategy};
use crate::syntax::{alpha_eq, term, Term};
use crate::transform::{infer, Inference, Mode};

pub const EXPERIMENTS: [&str; 6] = [
    "omega-l",
    "omega-r",
    "fireball-erasure",
    "strong-separation",
    "instability-open",
    "instability-strong",
];

const FUEL: usize = 100;
const DELTA: &str = r"(\x.x x)";
const ID: &str = r"(\z.z)";
const OMEGA: &str = r"((\a.a a) (\a.a a))";

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Replay {
    pub label: String,
    pub strategy: Strategy,
    pub start: Term,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub passed: bool,
    pub claims: Vec<Claim>,
    pub replays: Vec<Replay>,
}

impl ExperimentReport {
    pub fn render(&self) -> String {
        let mut s = format!("== {} ==\n", self.name);
        for r in &self.replays {
            let _ = writeln!(s, "{} under {}:", r.label, r.strategy);
            let _ = writeln!(s, "     {}", r.start);
            for st in r.outcome.trace().iter().take(8) {
                let _ = writeln!(s, "  →{:<2} {}", st.rule.to_string(), st.reduct);
            }
            if r.outcome.trace().len() > 8 {
                let _ = writeln!(s, "     ... {} steps in all", r.outcome.trace().len());
            }
            let _ = match &r.outcome {
                Outcome::Normal { .. } => writeln!(s, "  normal form"),
                Outcome::Cycle { loop_start, .. } => writeln!(s, "  cycle back to the term after step {loop_start}"),
                Outcome::Exhausted { .. } => writeln!(s, "  fuel exhausted"),
            };
        }
        for c in &self.claims {
            let _ = writeln!(s, "[{}] {}", if c.ok { "ok" } else { "FAIL" }, c.claim);
        }
        s
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Builder {
    report: ExperimentReport,
}

impl Builder {
    fn new(name: &str) -> Self {
        Builder {
            report: ExperimentReport {
                name: name.to_string(),
                passed: true,
                claims: Vec::new(),
                replays: Vec::new(),
            },
        }
    }

    fn claim(&mut self, text: impl Into<String>, ok: bool) {
        self.report.passed &= ok;
        self.report.claims.push(Claim { claim: text.into(), ok });
    }

    fn run(&mut self, label: &str, t: &Term, s: Strategy) -> Outcome {
        let outcome = evaluate(t, s, FUEL).expect("experiment terms suit their strategies");
        self.report.replays.push(Replay {
            label: label.to_string(),
            strategy: s,
            start: t.clone(),
            outcome: outcome.clone(),
        });
        outcome
    }

    fn finish(self) -> ExperimentReport {
        self.report
    }
}

/// The first steps of `o` fire `rules` and reach the given terms (up to α).
fn prefix_matches(o: &Outcome, expected: &[(RuleTag, Term)]) -> bool {
    let trace = o.trace();
    trace.len() >= expected.len()
        && trace
            .iter()
            .zip(expected)
            .all(|(st, (rule, t))| st.rule == *rule && alpha_eq(&st.reduct, t))
}

fn normal_is(o: &Outcome, expected: &str, steps: usize) -> bool {
    o.normal_form().is_some_and(|nf| alpha_eq(nf, &term(expected))) && o.trace().len() == steps
}

/// `u` is one step of `s` away from `t`.
fn one_step(t: &Term, u: &Term, s: Strategy) -> bool {
    redexes(t, s).is_ok_and(|rs| rs.iter().any(|st| alpha_eq(&st.reduct, u)))
}

pub fn run_experiment(name: &str) -> Result<ExperimentReport, HarnessError> {
    let t = |s: &str| term(&s.replace('δ', DELTA).replace('I', ID).replace('Ω', OMEGA));
    let mut b = Builder::new(name);
    match name {
        "omega-l" => {
            let omega_l = t(r"(\w.δ) (y y) δ");
            b.claim("Ωl is βv-normal", is_normal(&omega_l, Strategy::Plotkin) == Ok(true));
            let o = b.run("Ωl", &omega_l, Strategy::Open);
            b.claim("Ωl diverges in the open substitution calculus", o.is_cycle());
            let expected = [
                (RuleTag::M, t(r"δ[w <- y y] δ")),
                (RuleTag::M, t(r"(x x)[x <- δ][w <- y y]")),
                (RuleTag::E, t(r"(δ δ)[w <- y y]")),
                (RuleTag::M, t(r"(x x)[x <- δ][w <- y y]")),
            ];
            b.claim("trace Ωl →m δ[x←yy]δ →m (xx)[x←δ][x←yy] →e (δδ)[x←yy] →m …", prefix_matches(&o, &expected));
            let f = b.run("Ωl", &omega_l, Strategy::Fire);
            b.claim("Ωl →βi δδ and diverges in the fireball calculus", f.is_cycle() && f.trace()[0].rule == RuleTag::BetaI);
        }
        "omega-r" => {
            let omega_r = t(r"δ ((\w.δ) (y y))");
            b.claim("Ωr is βv-normal", is_normal(&omega_r, Strategy::Plotkin) == Ok(true));
            let o = b.run("Ωr", &omega_r, Strategy::Open);
            b.claim("Ωr diverges in the open substitution calculus", o.is_cycle());
            let chain = [
                omega_r.clone(),
                t(r"δ (δ[w <- y y])"),
                t(r"(x x)[x <- δ[w <- y y]]"),
                t(r"(δ δ)[w <- y y]"),
            ];
            let ok = chain.windows(2).all(|w| one_step(&w[0], &w[1], Strategy::Open));
            b.claim("Ωr →o δ(δ[x←yy]) →o (xx)[x←δ[x←yy]] →o (δδ)[x←yy], each an open step", ok);
            let expected = [
                (RuleTag::M, t(r"(x x)[x <- (\w.δ) (y y)]")),
                (RuleTag::M, t(r"(x x)[x <- δ[w <- y y]]")),
                (RuleTag::E, t(r"(δ δ)[w <- y y]")),
            ];
            b.claim("leftmost-outermost evaluation passes through (δδ)[x←yy]", prefix_matches(&o, &expected));
        }
        "fireball-erasure" => {
            let u = t(r"(\x.I) (y y)");
            b.claim("(λx.I)(yy) is βv-normal", is_normal(&u, Strategy::Plotkin) == Ok(true));
            let f = b.run("(λx.I)(yy)", &u, Strategy::Fire);
            b.claim("(λx.I)(yy) →βi I, erasing the inert argument", normal_is(&f, ID, 1) && f.trace()[0].rule == RuleTag::BetaI);
            let o = b.run("(λx.I)(yy)", &u, Strategy::Open);
            b.claim("the substitution calculus keeps it: →m I[x←yy], normal", normal_is(&o, r"(\z.z)[x <- y y]", 1));
        }
        "strong-separation" => {
            let u = t(r"(\x.I) (y (\z.Ω))");
            let f = b.run("u", &u, Strategy::Fire);
            b.claim("u →βi I in one step", normal_is(&f, ID, 1) && f.trace()[0].rule == RuleTag::BetaI);
            let x = b.run("u", &u, Strategy::External);
            b.claim("the external strategy diverges on u", x.is_cycle());
            let r = t(r"x (\y.Ω)");
            let rx = b.run("x(λy.Ω)", &r, Strategy::External);
            b.claim("the external strategy diverges on x(λy.Ω)", rx.is_cycle());
            for (label, term) in [("u", &u), ("x(λy.Ω)", &r)] {
                let inf = infer(term, Mode::Shrinking, FUEL);
                b.claim(
                    format!("no shrinking derivation is found for {label}: evaluation cycles"),
                    matches!(inf, Ok(Inference::Diverges { .. })),
                );
            }
        }
        "instability-open" => {
            let u = t(r"(\x.I) (y y)");
            let f = b.run("t = (λx.I)(yy)", &u, Strategy::Fire);
            b.claim("t →βi I", normal_is(&f, ID, 1));
            let ctx_t = t(r"(\y.(\x.I) (y y)) δ");
            let p = b.run("C⟨t⟩, C = (λy.⟨·⟩)δ", &ctx_t, Strategy::Plotkin);
            b.claim(
                "C⟨t⟩ →βv (λx.I)(δδ) and then diverges",
                p.is_cycle() && prefix_matches(&p, &[(RuleTag::BetaV, t(r"(\x.I) (δ δ)"))]),
            );
            let ctx_i = t(r"(\y.I) δ");
            let q = b.run("C⟨I⟩", &ctx_i, Strategy::Plotkin);
            b.claim("C⟨I⟩ →βv I", normal_is(&q, ID, 1));
        }
        "instability-strong" => {
            let u = t(r"(\x.I) (y (\z.Ω))");
            let f = b.run("u = (λx.I)(y(λz.Ω))", &u, Strategy::Fire);
            b.claim("u →βi I", normal_is(&f, ID, 1));
            let ctx_u = t(r"(\y.(\x.I) (y (\z.Ω))) (\w.w I)");
            let p = b.run("C⟨u⟩, C = (λy.⟨·⟩)(λw.wI)", &ctx_u, Strategy::Plotkin);
            let expected = [
                r"(\x.I) ((\w.w I) (\z.Ω))",
                r"(\x.I) ((\z.Ω) I)",
                r"(\x.I) Ω",
                r"(\x.I) Ω",
            ]
            .map(|s| (RuleTag::BetaV, t(s)));
            b.claim("C⟨u⟩ →βv (λx.I)((λw.wI)(λz.Ω)) →βv (λx.I)((λz.Ω)I) →βv (λx.I)Ω →βv …", p.is_cycle() && prefix_matches(&p, &expected));
            let ctx_i = t(r"(\y.I) (\w.w I)");
            let q = b.run("C⟨I⟩", &ctx_i, Strategy::Plotkin);
            b.claim("C⟨I⟩ →βv I", normal_is(&q, ID, 1));
        }
        _ => return Err(HarnessError::UnknownExperiment(name.to_string())),
    }
    Ok(b.finish())
}
