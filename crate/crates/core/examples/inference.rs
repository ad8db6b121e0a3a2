//! Derivations from evaluation: type the normal form, then expand back.

use vsc_lab::syntax::term;
use vsc_lab::transform::{infer, Inference, Mode};
use vsc_lab::types::{deriv_size, is_shrinking};

fn main() {
    let omega = r"((\a.a a) (\a.a a))";
    for (s, mode) in [
        (r"(\x.x x) (\y.y)".to_string(), Mode::Open),
        (r"(\x.x x) (\y.y)".to_string(), Mode::Shrinking),
        (format!(r"(\x.y) (\z.{omega})"), Mode::Shrinking),
        (format!(r"(\x.\i.i) (y (\z.{omega}))"), Mode::Shrinking),
        (omega.to_string(), Mode::Open),
    ] {
        match infer(&term(&s), mode, 200).unwrap() {
            Inference::Derived { derivation, evaluation } => println!(
                "{mode:<9} {s}\n          {}  (size {}, {} steps, shrinking {})",
                derivation.conclusion,
                deriv_size(&derivation),
                evaluation.trace().len(),
                is_shrinking(&derivation)
            ),
            Inference::Diverges { .. } => println!("{mode:<9} {s}\n          evaluation cycles: untypable"),
            Inference::Unknown { .. } => println!("{mode:<9} {s}\n          fuel ran out"),
        }
    }
}
