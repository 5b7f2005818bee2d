//! Constructive fixed points of box-guarded formulas: the diagonalization
//! recursion, the top-substitution shortcut available above the strong-Löb
//! logic, and semantic verification over finite frames.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::kripke::{for_each_frame, FrameClass};
use crate::syntax::Formula;
use crate::verdict::Verdict;

/// A formula split into a box-free skeleton over placeholder slots and the
/// bodies of its maximal boxed subformulas. Substituting `box parts[i]` back
/// for slot `i` reconstructs the input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub skeleton: Formula,
    pub parts: Vec<Formula>,
}

/// Placeholder variable for slot `i`; the leading `#` keeps it out of the
/// parseable identifier space.
fn slot_var(i: usize) -> String {
    format!("#{}", i + 1)
}

/// Extracts the maximal boxed subformulas (those not nested inside another
/// box) left to right, leaving a box-free skeleton.
pub fn decompose(a: &Formula, _p: &str) -> Decomposition {
    fn go(f: &Formula, parts: &mut Vec<Formula>) -> Formula {
        match f {
            Formula::Bot | Formula::Var(_) => f.clone(),
            Formula::Impl(x, y) => {
                let x = go(x, parts);
                let y = go(y, parts);
                Formula::imp(x, y)
            }
            Formula::And(x, y) => {
                let x = go(x, parts);
                let y = go(y, parts);
                Formula::and(x, y)
            }
            Formula::Or(x, y) => {
                let x = go(x, parts);
                let y = go(y, parts);
                Formula::or(x, y)
            }
            Formula::Box(_, x) => {
                parts.push((**x).clone());
                Formula::var(&slot_var(parts.len() - 1))
            }
        }
    }
    let mut parts = Vec::new();
    let skeleton = go(a, &mut parts);
    Decomposition { skeleton, parts }
}

impl Decomposition {
    /// Fills slot `i` with `fill[i]` where given, `box parts[i]` otherwise.
    fn assemble(&self, fill: &HashMap<usize, Formula>) -> Formula {
        let mut out = self.skeleton.clone();
        for (i, part) in self.parts.iter().enumerate() {
            let replacement = match fill.get(&i) {
                Some(f) => f.clone(),
                None => Formula::bx(part.clone()),
            };
            out = out.subst(&slot_var(i), &replacement);
        }
        out
    }
}

/// The diagonalization recursion. For `p` box-guarded in `a` the result is
/// `p`-free and is the (provably unique) fixed point of `a` with respect to
/// `p`; box-free input is returned unchanged. No simplification is applied,
/// so the output stays auditable against the recursion.
pub fn diag(a: &Formula, p: &str) -> Formula {
    let d = decompose(a, p);
    let k = d.parts.len();
    if k == 0 {
        return a.clone();
    }
    // memoized on the set of slots already blanked to top
    let mut memo: HashMap<u64, Formula> = HashMap::new();
    diag_slots(&d, p, 0, &mut memo)
}

fn diag_slots(d: &Decomposition, p: &str, blanked: u64, memo: &mut HashMap<u64, Formula>) -> Formula {
    if let Some(f) = memo.get(&blanked) {
        return f.clone();
    }
    let k = d.parts.len();
    let active: Vec<usize> = (0..k).filter(|i| blanked & (1 << i) == 0).collect();
    let result = if active.is_empty() {
        // all slots blanked: the assembly is box-free, its own fixed point
        let fill: HashMap<usize, Formula> = (0..k).map(|i| (i, Formula::top())).collect();
        d.assemble(&fill)
    } else {
        let mut fill: HashMap<usize, Formula> = HashMap::new();
        for i in (0..k).filter(|i| blanked & (1 << i) != 0) {
            fill.insert(i, Formula::top());
        }
        for &i in &active {
            let di = diag_slots(d, p, blanked | (1 << i), memo);
            fill.insert(i, Formula::bx(d.parts[i].subst(p, &di)));
        }
        d.assemble(&fill)
    };
    memo.insert(blanked, result.clone());
    result
}

/// The shortcut valid above the strong-Löb logic: substitute top for `p`.
pub fn sl_fixpoint(a: &Formula, p: &str) -> Result<Formula> {
    if !a.is_guarded(p) {
        return Err(Error::NotGuarded(p.to_string()));
    }
    Ok(a.subst(p, &Formula::top()))
}

/// Replaces exactly the occurrences of `p` lying under at least one box.
pub fn subst_under_box(a: &Formula, p: &str, b: &Formula) -> Formula {
    fn go(f: &Formula, p: &str, b: &Formula, under: bool) -> Formula {
        match f {
            Formula::Bot => Formula::Bot,
            Formula::Var(q) => {
                if under && q == p {
                    b.clone()
                } else {
                    f.clone()
                }
            }
            Formula::Impl(x, y) => Formula::imp(go(x, p, b, under), go(y, p, b, under)),
            Formula::And(x, y) => Formula::and(go(x, p, b, under), go(y, p, b, under)),
            Formula::Or(x, y) => Formula::or(go(x, p, b, under), go(y, p, b, under)),
            Formula::Box(t, x) => Formula::boxed(*t, go(x, p, b, true)),
        }
    }
    go(a, p, b, false)
}

/// Model-checks the fixed-point equation `b <-> a[b/p]` on every frame of the
/// class up to `max_n` worlds. This refutes or fails to refute; "unrefuted"
/// is a proof only where the bound is known complete for the class.
pub fn verify_fixpoint(
    a: &Formula,
    p: &str,
    b: &Formula,
    class: FrameClass,
    max_n: usize,
) -> Result<Verdict> {
    if b.free_vars().contains(p) {
        return Err(Error::VariableOccurs(p.to_string()));
    }
    let equation = Formula::iff(b.clone(), a.subst(p, b));
    let mut refutation: Option<Verdict> = None;
    for n in 1..=max_n {
        let _ = for_each_frame(n, class, |frame| match frame.valid_on(&equation) {
            Ok(Verdict::Refuted(w)) => {
                refutation = Some(Verdict::Refuted(w));
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        })?;
        if let Some(v) = refutation.take() {
            return Ok(v);
        }
    }
    Ok(Verdict::Unrefuted { bound: max_n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn decompose_single_box() {
        let d = decompose(&Formula::bx(p()), "p");
        assert_eq!(d.skeleton, Formula::var("#1"));
        assert_eq!(d.parts, vec![p()]);
    }

    #[test]
    fn decompose_box_in_impl() {
        let d = decompose(&Formula::imp(Formula::bx(p()), Formula::Bot), "p");
        assert_eq!(d.skeleton, Formula::imp(Formula::var("#1"), Formula::Bot));
        assert_eq!(d.parts, vec![p()]);
    }

    #[test]
    fn decompose_two_slots_left_to_right() {
        let a = Formula::and(Formula::bx(p()), Formula::bx(Formula::imp(q(), p())));
        let d = decompose(&a, "p");
        assert_eq!(
            d.skeleton,
            Formula::and(Formula::var("#1"), Formula::var("#2"))
        );
        assert_eq!(d.parts, vec![p(), Formula::imp(q(), p())]);
    }

    #[test]
    fn decompose_reassembles_exactly() {
        let a = Formula::imp(
            Formula::bx(Formula::and(p(), Formula::bx(q()))),
            Formula::or(q(), Formula::bx(p())),
        );
        let d = decompose(&a, "p");
        assert!(d.skeleton.modal_depth() == 0);
        assert_eq!(d.assemble(&HashMap::new()), a);
    }

    #[test]
    fn diag_box_p() {
        assert_eq!(diag(&Formula::bx(p()), "p"), Formula::bx(Formula::top()));
    }

    #[test]
    fn diag_goedel_shape() {
        // box p -> bot becomes box (top -> bot) -> bot
        let a = Formula::imp(Formula::bx(p()), Formula::Bot);
        let expect = Formula::imp(
            Formula::bx(Formula::imp(Formula::top(), Formula::Bot)),
            Formula::Bot,
        );
        assert_eq!(diag(&a, "p"), expect);
    }

    #[test]
    fn diag_with_parameter() {
        // q & box p becomes q & box (q & top)
        let a = Formula::and(q(), Formula::bx(p()));
        let expect = Formula::and(q(), Formula::bx(Formula::and(q(), Formula::top())));
        assert_eq!(diag(&a, "p"), expect);
    }

    #[test]
    fn diag_box_free_is_identity() {
        let a = Formula::imp(q(), q());
        assert_eq!(diag(&a, "p"), a);
    }

    #[test]
    fn diag_output_is_p_free_when_guarded() {
        let a = Formula::imp(
            Formula::bx(Formula::imp(p(), q())),
            Formula::or(Formula::bx(p()), q()),
        );
        assert!(a.is_guarded("p"));
        assert!(!diag(&a, "p").free_vars().contains("p"));
    }

    #[test]
    fn sl_shortcut() {
        assert_eq!(
            sl_fixpoint(&Formula::bx(p()), "p").unwrap(),
            Formula::bx(Formula::top())
        );
        assert_eq!(
            sl_fixpoint(&Formula::imp(Formula::bx(p()), Formula::Bot), "p").unwrap(),
            Formula::imp(Formula::bx(Formula::top()), Formula::Bot)
        );
        assert_eq!(
            sl_fixpoint(&Formula::and(q(), Formula::bx(p())), "p").unwrap(),
            Formula::and(q(), Formula::bx(Formula::top()))
        );
        assert_eq!(
            sl_fixpoint(&p(), "p").unwrap_err(),
            Error::NotGuarded("p".to_string())
        );
    }

    #[test]
    fn verify_accepts_diag_of_box_p() {
        let v = verify_fixpoint(
            &Formula::bx(p()),
            "p",
            &Formula::bx(Formula::top()),
            FrameClass::Gl,
            4,
        )
        .unwrap();
        assert_eq!(v, Verdict::Unrefuted { bound: 4 });
    }

    #[test]
    fn verify_refutes_bot_for_box_p() {
        let v = verify_fixpoint(&Formula::bx(p()), "p", &Formula::Bot, FrameClass::Gl, 1).unwrap();
        assert!(v.refuted());
    }

    #[test]
    fn verify_rejects_p_in_candidate() {
        let e = verify_fixpoint(&Formula::bx(p()), "p", &p(), FrameClass::Gl, 2).unwrap_err();
        assert_eq!(e, Error::VariableOccurs("p".to_string()));
    }

    #[test]
    fn subst_under_box_leaves_bare_occurrences() {
        let a = Formula::imp(p(), Formula::bx(p()));
        let got = subst_under_box(&a, "p", &q());
        assert_eq!(got, Formula::imp(p(), Formula::bx(q())));
    }
}
