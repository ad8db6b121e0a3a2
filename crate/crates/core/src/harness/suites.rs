use super::{Verdict, BFS_BUDGET};
use crate::classify::{is_fire_fireball, is_fireball, is_rigid, is_strong_fireball};
use crate::rewrite::{
    apply_at, bfs_normalize, diamond_check, evaluate, is_normal, length_invariance, redex_positions, redexes,
    split_answer, LengthReport, Outcome, RuleTag, Strategy,
};
use crate::syntax::{alpha_eq, Move, Term};
use crate::transform::{
    anti_substitute, infer, merge_value_derivations, split_value_derivation, subject_expand, subject_reduce,
    substitute_derivation, type_fireball_open, type_fireball_shrinking, Inference, Mode, TypedStep,
};
use crate::types::{check_derivation, deriv_size, is_left, is_left_ctx, is_shrinking, Derivation, MultiType, Rule};

pub(crate) type Property = fn(&Term, usize) -> Verdict;

pub(crate) fn property(name: &str) -> Option<Property> {
    Some(match name {
        "diamond-open" => |t, _| diamond(t, Strategy::Open),
        "diamond-external" => |t, _| diamond(t, Strategy::External),
        "vsc-not-diamond" => not_diamond,
        "harmony-open" => |t, _| harmony(t, Strategy::Open, is_fireball(t)),
        "harmony-strong" => |t, _| harmony(t, Strategy::Vsc, is_strong_fireball(t)),
        "harmony-fire" => |t, _| match is_fire_fireball(t) {
            Ok(f) => harmony(t, Strategy::Fire, f),
            Err(_) => Verdict::Skip,
        },
        "fullness" => fullness,
        "subject-reduction-open" => |t, fuel| subject_reduction(t, Mode::Open, fuel),
        "subject-reduction-shrinking" => |t, fuel| subject_reduction(t, Mode::Shrinking, fuel),
        "subject-expansion" => subject_expansion,
        "length-bound" => length_bound,
        "substitution-bound" => substitution_bound,
        "spreading" => spreading,
        "untyped-normalization" => untyped_normalization,
        "plotkin-simulation" => plotkin_simulation,
        _ => return None,
    })
}

// `Ok(None)` marks a term outside the property's scope.
fn verdict(r: Result<Option<usize>, String>) -> Verdict {
    match r {
        Ok(Some(n)) => Verdict::pass(n),
        Ok(None) => Verdict::Skip,
        Err(e) => Verdict::Fail(e),
    }
}

fn diamond(t: &Term, s: Strategy) -> Verdict {
    match diamond_check(t, s) {
        Ok(r) => match r.violation {
            None => Verdict::pass(r.peaks),
            Some(p) => Verdict::Fail(format!(
                "{} at {:?} gives {}, {} at {:?} gives {}, no common reduct",
                p.left.rule, p.left.path, p.left.reduct, p.right.rule, p.right.path, p.right.reduct
            )),
        },
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn not_diamond(t: &Term, _: usize) -> Verdict {
    match diamond_check(t, Strategy::Vsc) {
        Ok(r) => match r.violation {
            Some(p) => Verdict::Pass {
                checks: r.peaks,
                note: Some(format!(
                    "{} at {:?} gives {} and {} at {:?} gives {}, with no common one-step reduct",
                    p.left.rule, p.left.path, p.left.reduct, p.right.rule, p.right.path, p.right.reduct
                )),
            },
            None => Verdict::Fail("every peak joins in one step".into()),
        },
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn harmony(t: &Term, s: Strategy, in_grammar: bool) -> Verdict {
    match is_normal(t, s) {
        Ok(normal) if normal == in_grammar => Verdict::pass(1),
        Ok(normal) => Verdict::Fail(format!("{s}-normal: {normal}, in the normal-form grammar: {in_grammar}")),
        Err(_) => Verdict::Skip,
    }
}

fn fullness(t: &Term, _: usize) -> Verdict {
    let x = is_normal(t, Strategy::External);
    let v = is_normal(t, Strategy::Vsc);
    match (x, v) {
        (Ok(a), Ok(b)) if a == b => Verdict::pass(1),
        (a, b) => Verdict::Fail(format!("external-normal: {a:?}, vsc-normal: {b:?}")),
    }
}

fn valid(d: &Derivation, what: &str) -> Result<(), String> {
    check_derivation(d).map(|_| ()).map_err(|e| format!("{what}: {e}"))
}

fn derived(t: &Term, mode: Mode, fuel: usize) -> Result<Option<(Derivation, Outcome)>, String> {
    match infer(t, mode, fuel).map_err(|e| format!("{mode} inference: {e}"))? {
        Inference::Derived { derivation, evaluation } => {
            valid(&derivation, "inferred derivation")?;
            if derivation.subject() != t {
                return Err(format!("inferred derivation types {}", derivation.subject()));
            }
            let ok = match mode {
                Mode::Open => derivation.multi() == Some(&MultiType::empty()),
                Mode::Shrinking => is_shrinking(&derivation),
            };
            if !ok {
                return Err(format!("{mode} inference concluded {}", derivation.conclusion));
            }
            Ok(Some((derivation, evaluation)))
        }
        _ => Ok(None),
    }
}

fn reduce_checked(d: &Derivation, s: &TypedStep) -> Result<Derivation, String> {
    let r = subject_reduce(d, s).map_err(|e| format!("reducing along {} at {:?}: {e}", s.step.rule, s.step.path))?;
    valid(&r, "reduced derivation")?;
    if r.ctx() != d.ctx() || r.conclusion.rhs != d.conclusion.rhs {
        return Err(format!("conclusion changed from {} to {}", d.conclusion, r.conclusion));
    }
    if deriv_size(&r) >= deriv_size(d) {
        return Err(format!(
            "{} step at {:?} from {}: size {} -> {}",
            s.step.rule,
            s.step.path,
            s.before,
            deriv_size(d),
            deriv_size(&r)
        ));
    }
    Ok(r)
}

/// Every strategy step from the start term shrinks the derivation, and so
/// does every step of the recorded evaluation.
fn subject_reduction(t: &Term, mode: Mode, fuel: usize) -> Verdict {
    verdict((|| {
        let Some((d, evaluation)) = derived(t, mode, fuel)? else {
            return Ok(None);
        };
        let mut checks = 0;
        for st in redexes(t, mode.strategy()).map_err(|e| e.to_string())? {
            reduce_checked(&d, &TypedStep::new(t.clone(), st))?;
            checks += 1;
        }
        let mut cur = d.clone();
        let mut before = t.clone();
        for st in evaluation.trace() {
            cur = reduce_checked(&cur, &TypedStep::new(before.clone(), st.clone()))?;
            before = st.reduct.clone();
            checks += 1;
        }
        if evaluation.trace().len() > deriv_size(&d) {
            return Err(format!("{} steps but size {}", evaluation.trace().len(), deriv_size(&d)));
        }
        Ok(Some(checks))
    })())
}

fn subject_expansion(t: &Term, fuel: usize) -> Verdict {
    let mut any = false;
    let mut checks = 0;
    for mode in [Mode::Open, Mode::Shrinking] {
        let Ok(evaluation) = evaluate(t, mode.strategy(), fuel) else {
            return Verdict::Fail("evaluation failed".into());
        };
        let Some(nf) = evaluation.normal_form() else { continue };
        any = true;
        let start = match mode {
            Mode::Open => type_fireball_open(nf),
            Mode::Shrinking => type_fireball_shrinking(nf),
        };
        let mut d = match start {
            Ok(d) => d,
            Err(e) => return Verdict::Fail(format!("typing the {mode} normal form {nf}: {e}")),
        };
        let conclusion = (d.ctx().clone(), d.conclusion.rhs.clone());
        let trace = evaluation.trace();
        for (i, st) in trace.iter().enumerate().rev() {
            let before = if i == 0 { t } else { &trace[i - 1].reduct };
            let s = TypedStep::new(before.clone(), st.clone());
            let e = match subject_expand(&d, &s) {
                Ok(e) => e,
                Err(err) => return Verdict::Fail(format!("expanding {} at {:?}: {err}", st.rule, st.path)),
            };
            if let Err(msg) = valid(&e, "expanded derivation") {
                return Verdict::Fail(msg);
            }
            if (e.ctx().clone(), e.conclusion.rhs.clone()) != conclusion || e.subject() != before {
                return Verdict::Fail(format!("expansion concluded {}", e.conclusion));
            }
            // and back again
            match subject_reduce(&e, &s) {
                Ok(r) if r.conclusion == d.conclusion => {}
                Ok(r) => return Verdict::Fail(format!("re-reduction concluded {}", r.conclusion)),
                Err(err) => return Verdict::Fail(format!("re-reducing: {err}")),
            }
            d = e;
            checks += 1;
        }
        if mode == Mode::Shrinking && !is_shrinking(&d) {
            return Verdict::Fail(format!("shrinking expansion ended with {}", d.conclusion));
        }
    }
    if any {
        Verdict::pass(checks)
    } else {
        Verdict::Skip
    }
}

fn length_bound(t: &Term, fuel: usize) -> Verdict {
    let mut checks = 0;
    for mode in [Mode::Open, Mode::Shrinking] {
        match derived(t, mode, fuel) {
            Ok(Some((d, evaluation))) => {
                let n = evaluation.trace().len();
                if n > deriv_size(&d) {
                    return Verdict::Fail(format!("{mode}: {n} steps but size {}", deriv_size(&d)));
                }
                checks += 1;
                // every other evaluation path has the same length
                match length_invariance(t, mode.strategy(), BFS_BUDGET) {
                    Ok(LengthReport::Invariant { lengths }) => {
                        if lengths.iter().any(|(_, k)| *k != n) {
                            return Verdict::Fail(format!("{mode}: path lengths {lengths:?}, evaluation took {n}"));
                        }
                        checks += 1;
                    }
                    Ok(LengthReport::Undecided) => {}
                    Ok(other) => return Verdict::Fail(format!("{mode}: {other:?}")),
                    Err(e) => return Verdict::Fail(e.to_string()),
                }
            }
            Ok(None) => {}
            Err(e) => return Verdict::Fail(e),
        }
    }
    if checks == 0 {
        Verdict::Skip
    } else {
        Verdict::pass(checks)
    }
}

/// All derivations typing the subterm at `path` (one per premise of each
/// many node crossed on the way).
fn nodes_at<'a>(d: &'a Derivation, path: &[Move]) -> Vec<&'a Derivation> {
    let Some((mv, rest)) = path.split_first() else { return vec![d] };
    match (mv, d.rule) {
        (Move::AppL, Rule::App) | (Move::EsBody, Rule::Es) => nodes_at(&d.premises[0], rest),
        (Move::AppR, Rule::App) | (Move::EsSubject, Rule::Es) => nodes_at(&d.premises[1], rest),
        (Move::LamBody, Rule::Many) => d.premises.iter().flat_map(|l| nodes_at(&l.premises[0], rest)).collect(),
        _ => Vec::new(),
    }
}

/// The derivations along the recorded evaluations of `t`, in both modes.
fn derivations_along(t: &Term, fuel: usize) -> Result<Vec<Derivation>, String> {
    let mut out = Vec::new();
    for mode in [Mode::Open, Mode::Shrinking] {
        let Some((d, evaluation)) = derived(t, mode, fuel)? else { continue };
        let mut cur = d;
        let mut before = t.clone();
        for st in evaluation.trace() {
            let next = subject_reduce(&cur, &TypedStep::new(before.clone(), st.clone())).map_err(|e| e.to_string())?;
            out.push(std::mem::replace(&mut cur, next));
            before = st.reduct.clone();
        }
        out.push(cur);
    }
    Ok(out)
}

// Substitution, anti-substitution, split and merge contracts on one exponential redex `b[x <- L<v>]` typed by `d`.
fn substitution_contracts(d: &Derivation) -> Result<(), String> {
    let Term::Es(b, x, s) = d.subject() else { unreachable!() };
    let (layers, v) = split_answer(s).expect("exponential redex");
    let mut psi = &d.premises[1];
    for _ in &layers {
        psi = &psi.premises[0];
    }
    let phi = &d.premises[0];
    let n = phi.ctx().get(x);

    let theta = substitute_derivation(phi, x, psi).map_err(|e| format!("substitution: {e}"))?;
    valid(&theta, "substituted derivation")?;
    let (sp, sv, st) = (deriv_size(phi), deriv_size(psi), deriv_size(&theta));
    if st > sp + sv || st + n.len() != sp + sv {
        return Err(format!("substitution sizes: |Φ|={sp}, |Ψ|={sv}, |N|={}, |Θ|={st}", n.len()));
    }
    let expected_ctx = phi.ctx().remove(x).0.sum(psi.ctx());
    if theta.ctx() != &expected_ctx || theta.conclusion.rhs != phi.conclusion.rhs {
        return Err(format!("substitution concluded {}", theta.conclusion));
    }

    let (phi2, psi2) = anti_substitute(&theta, b, x, v).map_err(|e| format!("anti-substitution: {e}"))?;
    valid(&phi2, "anti-substituted body")?;
    valid(&psi2, "anti-substituted value")?;
    if phi2.subject() != &**b || psi2.subject() != v {
        return Err("anti-substitution returned the wrong subjects".into());
    }
    if phi2.ctx().remove(x).0.sum(psi2.ctx()) != *theta.ctx() || phi2.conclusion.rhs != theta.conclusion.rhs {
        return Err(format!("anti-substitution split {} into {} and {}", theta.conclusion, phi2.conclusion, psi2.conclusion));
    }
    let again = substitute_derivation(&phi2, x, &psi2).map_err(|e| format!("round trip: {e}"))?;
    if again.conclusion != theta.conclusion {
        return Err(format!("round trip concluded {}", again.conclusion));
    }

    if let Some(first) = n.items().first() {
        let m1 = MultiType::single(first.clone());
        let m2 = n.minus(&m1).expect("sub-multiset");
        let (a, c) = split_value_derivation(psi, &m1, &m2).map_err(|e| format!("split: {e}"))?;
        valid(&a, "split part")?;
        valid(&c, "split part")?;
        if deriv_size(&a) + deriv_size(&c) != sv || a.ctx().sum(c.ctx()) != *psi.ctx() {
            return Err("split does not add up".into());
        }
        let back = merge_value_derivations(&a, &c).map_err(|e| format!("merge: {e}"))?;
        if back.conclusion != psi.conclusion || deriv_size(&back) != sv {
            return Err(format!("merge concluded {}", back.conclusion));
        }
    }
    Ok(())
}

fn substitution_bound(t: &Term, fuel: usize) -> Verdict {
    verdict((|| {
        let mut checks = 0;
        for d in derivations_along(t, fuel)? {
            for (path, rule) in redex_positions(d.subject(), Strategy::Vsc).map_err(|e| e.to_string())? {
                if rule != RuleTag::E {
                    continue;
                }
                for node in nodes_at(&d, &path) {
                    substitution_contracts(node).map_err(|e| format!("at {path:?} of {}: {e}", d.subject()))?;
                    checks += 1;
                }
            }
        }
        Ok((checks > 0).then_some(checks))
    })())
}

fn spreading(t: &Term, fuel: usize) -> Verdict {
    fn walk(d: &Derivation, checks: &mut usize) -> Result<(), String> {
        if let Some(m) = d.multi() {
            if is_rigid(d.subject()) && is_left_ctx(d.ctx()) {
                *checks += 1;
                if !is_left(m) {
                    return Err(format!("rigid subject with left context but non-left type: {}", d.conclusion));
                }
            }
        }
        d.premises.iter().try_for_each(|p| walk(p, checks))
    }
    verdict((|| {
        let mut checks = 0;
        for d in derivations_along(t, fuel)? {
            walk(&d, &mut checks)?;
        }
        Ok((checks > 0).then_some(checks))
    })())
}

fn untyped_normalization(t: &Term, fuel: usize) -> Verdict {
    let Ok(Some(nf)) = bfs_normalize(t, Strategy::Vsc, BFS_BUDGET) else {
        return Verdict::Skip;
    };
    match evaluate(t, Strategy::External, fuel) {
        Ok(Outcome::Normal { result, .. }) if alpha_eq(&result, &nf) => Verdict::pass(1),
        Ok(Outcome::Normal { result, .. }) => Verdict::Fail(format!("external strategy ends in {result}, search found {nf}")),
        Ok(Outcome::Cycle { .. }) => Verdict::Fail(format!("external strategy cycles, but {nf} is reachable")),
        Ok(Outcome::Exhausted { .. }) => Verdict::Skip,
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

/// Every βv step is an m step followed by an e step at the same position.
fn plotkin_simulation(t: &Term, _: usize) -> Verdict {
    verdict((|| {
        let mut checks = 0;
        let vsc = redex_positions(t, Strategy::Vsc).map_err(|e| e.to_string())?;
        for st in redexes(t, Strategy::Plotkin).map_err(|e| e.to_string())? {
            if !vsc.contains(&(st.path.clone(), RuleTag::M)) {
                return Err(format!("no m redex at {:?}", st.path));
            }
            let mid = apply_at(t, &st.path, RuleTag::M).map_err(|e| e.to_string())?;
            let mid_redexes = redex_positions(&mid, Strategy::Vsc).map_err(|e| e.to_string())?;
            if !mid_redexes.contains(&(st.path.clone(), RuleTag::E)) {
                return Err(format!("no e redex at {:?} of {mid}", st.path));
            }
            let end = apply_at(&mid, &st.path, RuleTag::E).map_err(|e| e.to_string())?;
            if !alpha_eq(&end, &st.reduct) {
                return Err(format!("βv gives {}, m then e gives {end}", st.reduct));
            }
            checks += 1;
        }
        Ok(Some(checks))
    })())
}
