//! Randomized invariants. Names come from a tiny pool so that shadowing
//! and capture situations are frequent.

use proptest::prelude::*;
use proptest::strategy::Strategy as _;

use vsc_lab::classify::{is_answer, is_inert, is_rigid, is_strong_inert, is_value};
use vsc_lab::rewrite::{redexes, Strategy};
use vsc_lab::syntax::{alpha_eq, canon, free_vars, freshen, parse, print, print_full, subst, Ident, Term};
use vsc_lab::transform::{infer, subject_expand, subject_reduce, Inference, Mode, TypedStep};
use vsc_lab::types::{check_derivation, deriv_size, Derivation};

fn name() -> impl proptest::strategy::Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z"]).prop_map(String::from)
}

fn any_term(pure: bool) -> impl proptest::strategy::Strategy<Value = Term> {
    let leaf = name().prop_map(|n| Term::var(&n));
    leaf.prop_recursive(6, 40, 2, move |inner| {
        let lam = (name(), inner.clone()).prop_map(|(x, b)| Term::lam(&x, b));
        let app = (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a));
        if pure {
            prop_oneof![lam, app].boxed()
        } else {
            let es = (inner.clone(), name(), inner).prop_map(|(b, x, s)| Term::es(b, &x, s));
            prop_oneof![lam, app, es].boxed()
        }
    })
}

fn value() -> impl proptest::strategy::Strategy<Value = Term> {
    (name(), any_term(false)).prop_map(|(x, b)| Term::lam(&x, b))
}

// Every free variable typed in a context occurs free in the subject.
fn contexts_cover_free_variables(d: &Derivation) -> bool {
    let fv = free_vars(d.subject());
    d.ctx().domain().all(|x| fv.contains(x)) && d.premises.iter().all(contexts_cover_free_variables)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn printing_round_trips(t in any_term(false)) {
        prop_assert_eq!(&parse(&print(&t)).unwrap(), &t);
        prop_assert_eq!(&parse(&print_full(&t)).unwrap(), &t);
    }

    #[test]
    fn canon_is_idempotent_and_alpha_invariant(t in any_term(false)) {
        let c = canon(&t);
        prop_assert_eq!(&canon(&c), &c);
        prop_assert!(alpha_eq(&c, &t));
        let f = freshen(&t, &free_vars(&t));
        prop_assert!(alpha_eq(&f, &t));
        prop_assert_eq!(canon(&f), c);
    }

    #[test]
    fn substitution_free_variables(t in any_term(false), u in any_term(false), x in name()) {
        let x = Ident::new(&x);
        let r = subst(&t, &x, &u);
        let fv_t = free_vars(&t);
        let mut expected = fv_t.clone();
        if expected.remove(&x) {
            expected.extend(free_vars(&u));
        }
        prop_assert_eq!(free_vars(&r), expected);
        // substitution respects α
        let t2 = freshen(&t, &free_vars(&t));
        prop_assert!(alpha_eq(&subst(&t2, &x, &u), &r));
    }

    #[test]
    fn class_inclusions(t in any_term(false)) {
        prop_assert!(!is_inert(&t) || is_rigid(&t));
        prop_assert!(!is_strong_inert(&t) || is_inert(&t));
        prop_assert!(!is_value(&t) || is_answer(&t));
    }

    #[test]
    fn steps_are_alpha_invariant(t in any_term(false)) {
        let f = freshen(&t, &free_vars(&t));
        for s in [Strategy::Open, Strategy::Vsc, Strategy::External] {
            let a = redexes(&t, s).unwrap();
            let b = redexes(&f, s).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(&x.path, &y.path);
                prop_assert!(alpha_eq(&x.reduct, &y.reduct));
            }
        }
    }

    #[test]
    fn inferred_derivations_transport(t in any_term(false)) {
        for mode in [Mode::Open, Mode::Shrinking] {
            let Inference::Derived { derivation, evaluation } = infer(&t, mode, 60).unwrap() else { continue };
            prop_assert!(check_derivation(&derivation).is_ok());
            prop_assert_eq!(derivation.subject(), &t);
            prop_assert!(contexts_cover_free_variables(&derivation));
            prop_assert!(evaluation.trace().len() <= deriv_size(&derivation));
            // every step from the start, not just the evaluation's, shrinks it
            for st in redexes(&t, mode.strategy()).unwrap() {
                let s = TypedStep::new(t.clone(), st);
                let r = subject_reduce(&derivation, &s).unwrap();
                prop_assert!(check_derivation(&r).is_ok());
                prop_assert!(deriv_size(&r) < deriv_size(&derivation));
                prop_assert_eq!(r.ctx(), derivation.ctx());
                let back = subject_expand(&r, &s).unwrap();
                prop_assert_eq!(&back.conclusion, &derivation.conclusion);
            }
        }
    }

    #[test]
    fn vsc_steps_preserve_judgments(t in any_term(false)) {
        // Open derivations exist for terms whose open evaluation ends; any
        // vsc step, including ones under abstractions, keeps the judgment.
        let Ok(Inference::Derived { derivation, .. }) = infer(&t, Mode::Open, 60) else { return Ok(()) };
        for st in redexes(&t, Strategy::Vsc).unwrap() {
            let r = subject_reduce(&derivation, &TypedStep::new(t.clone(), st)).unwrap();
            prop_assert!(check_derivation(&r).is_ok());
            prop_assert!(deriv_size(&r) <= deriv_size(&derivation));
            prop_assert_eq!(&r.conclusion.rhs, &derivation.conclusion.rhs);
            prop_assert_eq!(r.ctx(), derivation.ctx());
        }
    }

    #[test]
    fn substitution_into_typed_values(v in value(), x in name()) {
        // the e step substitutes a typed value into both occurrences
        let x = Ident::new(&x);
        let t = Term::es(Term::app(Term::Var(x.clone()), Term::Var(x.clone())), x.as_str(), v);
        if let Ok(Inference::Derived { derivation, evaluation }) = infer(&t, Mode::Open, 60) {
            prop_assert!(check_derivation(&derivation).is_ok());
            prop_assert!(evaluation.trace().len() <= deriv_size(&derivation));
        }
    }
}
