//! Formula AST, substitution, guardedness analysis and the axiom/logic catalog.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Which box a `Formula::Box` node carries: the plain unimodal box, or one of
/// the two classical bimodal operators `[i]` / `[m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalityTag {
    Plain,
    I,
    M,
}

impl fmt::Display for ModalityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalityTag::Plain => write!(f, "box"),
            ModalityTag::I => write!(f, "[i]"),
            ModalityTag::M => write!(f, "[m]"),
        }
    }
}

/// Core formula grammar: bottom, variables, implication, conjunction,
/// disjunction and tagged boxes. `top`, negation, `<->` and the dotted box
/// are derived forms normalized away at construction, so structural equality
/// is the only equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Var(String),
    Impl(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(ModalityTag, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn boxed(tag: ModalityTag, a: Formula) -> Formula {
        Formula::Box(tag, Box::new(a))
    }

    /// Plain `box A`.
    pub fn bx(a: Formula) -> Formula {
        Formula::boxed(ModalityTag::Plain, a)
    }

    /// `top`, normalized to `bot -> bot`.
    pub fn top() -> Formula {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    /// `~A`, normalized to `A -> bot`.
    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `A <-> B`, normalized to `(A -> B) & (B -> A)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// `boxdot A`, the dotted box `A & box A`.
    pub fn boxdot(a: Formula) -> Formula {
        Formula::and(a.clone(), Formula::bx(a))
    }

    /// `<i> A` as `~[i]~A` (classical bimodal reading only).
    pub fn dia_i(a: Formula) -> Formula {
        Formula::neg(Formula::boxed(ModalityTag::I, Formula::neg(a)))
    }

    /// Capture-free simultaneous replacement of every occurrence of the
    /// variable `p` by `b`.
    pub fn subst(&self, p: &str, b: &Formula) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Var(q) => {
                if q == p {
                    b.clone()
                } else {
                    self.clone()
                }
            }
            Formula::Impl(x, y) => Formula::imp(x.subst(p, b), y.subst(p, b)),
            Formula::And(x, y) => Formula::and(x.subst(p, b), y.subst(p, b)),
            Formula::Or(x, y) => Formula::or(x.subst(p, b), y.subst(p, b)),
            Formula::Box(t, x) => Formula::boxed(*t, x.subst(p, b)),
        }
    }

    /// True iff every occurrence of `p` lies under at least one box.
    /// Vacuously true when `p` does not occur.
    pub fn is_guarded(&self, p: &str) -> bool {
        fn bare(f: &Formula, p: &str) -> bool {
            match f {
                Formula::Bot => false,
                Formula::Var(q) => q == p,
                Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                    bare(a, p) || bare(b, p)
                }
                Formula::Box(_, _) => false,
            }
        }
        !bare(self, p)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    fn collect_vars(&self, acc: &mut BTreeSet<String>) {
        match self {
            Formula::Bot => {}
            Formula::Var(q) => {
                acc.insert(q.clone());
            }
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(acc);
                b.collect_vars(acc);
            }
            Formula::Box(_, a) => a.collect_vars(acc),
        }
    }

    /// Maximal box-nesting depth.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Var(_) => 0,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Box(_, a) => a.modal_depth() + 1,
        }
    }

    /// Subformula closure in first-occurrence post-order, deduplicated.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        fn walk(f: &Formula, seen: &mut BTreeSet<Formula>, out: &mut Vec<Formula>) {
            match f {
                Formula::Bot | Formula::Var(_) => {}
                Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, seen, out);
                    walk(b, seen, out);
                }
                Formula::Box(_, a) => walk(a, seen, out),
            }
            if seen.insert(f.clone()) {
                out.push(f.clone());
            }
        }
        walk(self, &mut seen, &mut out);
        out
    }

    fn tag_profile(&self) -> (bool, bool, bool) {
        match self {
            Formula::Bot | Formula::Var(_) => (false, false, false),
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                let (p1, i1, m1) = a.tag_profile();
                let (p2, i2, m2) = b.tag_profile();
                (p1 || p2, i1 || i2, m1 || m2)
            }
            Formula::Box(t, a) => {
                let (p, i, m) = a.tag_profile();
                match t {
                    ModalityTag::Plain => (true, i, m),
                    ModalityTag::I => (p, true, m),
                    ModalityTag::M => (p, i, true),
                }
            }
        }
    }

    /// Every box tag is plain (box-free formulas qualify).
    pub fn is_unimodal(&self) -> bool {
        let (_, i, m) = self.tag_profile();
        !i && !m
    }

    /// Every box tag is `[i]` or `[m]` (box-free formulas qualify).
    pub fn is_bimodal(&self) -> bool {
        let (p, _, _) = self.tag_profile();
        !p
    }

    /// Rejects formulas mixing the plain box with `[i]`/`[m]`.
    pub fn check_tags(&self) -> Result<()> {
        let (p, i, m) = self.tag_profile();
        if p && (i || m) {
            Err(Error::MixedTags)
        } else {
            Ok(())
        }
    }

    /// Retags every box with `tag`.
    pub fn retag(&self, tag: ModalityTag) -> Formula {
        match self {
            Formula::Bot | Formula::Var(_) => self.clone(),
            Formula::Impl(a, b) => Formula::imp(a.retag(tag), b.retag(tag)),
            Formula::And(a, b) => Formula::and(a.retag(tag), b.retag(tag)),
            Formula::Or(a, b) => Formula::or(a.retag(tag), b.retag(tag)),
            Formula::Box(_, a) => Formula::boxed(tag, a.retag(tag)),
        }
    }

    pub fn analyze(&self) -> Result<Analysis> {
        self.check_tags()?;
        let (_, i, m) = self.tag_profile();
        Ok(Analysis {
            free_vars: self.free_vars(),
            subformulas: self.subformulas(),
            modal_depth: self.modal_depth(),
            component: if i || m {
                Component::Bimodal
            } else {
                Component::Unimodal
            },
        })
    }
}

/// Result of [`Formula::analyze`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub free_vars: BTreeSet<String>,
    pub subformulas: Vec<Formula>,
    pub modal_depth: usize,
    pub component: Component,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Unimodal,
    Bimodal,
}

/// Names of the cataloged axiom schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomName {
    Cl,
    Em,
    Nrm,
    Opr,
    Trns,
    Bind,
    R,
    Fmap,
    Refl,
    Pll,
    Wlob,
    Henk,
    Ufp,
    Slob,
    Glb,
    Grz,
    Sgrz,
    Next,
    Derv,
    Gd,
    Dot3,
    Ver,
    Boxbot,
    Nnv,
    Nv,
}

impl AxiomName {
    pub const ALL: [AxiomName; 25] = [
        AxiomName::Cl,
        AxiomName::Em,
        AxiomName::Nrm,
        AxiomName::Opr,
        AxiomName::Trns,
        AxiomName::Bind,
        AxiomName::R,
        AxiomName::Fmap,
        AxiomName::Refl,
        AxiomName::Pll,
        AxiomName::Wlob,
        AxiomName::Henk,
        AxiomName::Ufp,
        AxiomName::Slob,
        AxiomName::Glb,
        AxiomName::Grz,
        AxiomName::Sgrz,
        AxiomName::Next,
        AxiomName::Derv,
        AxiomName::Gd,
        AxiomName::Dot3,
        AxiomName::Ver,
        AxiomName::Boxbot,
        AxiomName::Nnv,
        AxiomName::Nv,
    ];

    pub fn parse(s: &str) -> Result<AxiomName> {
        let t = s.to_ascii_lowercase();
        AxiomName::ALL
            .iter()
            .copied()
            .find(|a| a.name() == t)
            .ok_or_else(|| Error::UnknownAxiom(s.to_string()))
    }

    pub fn name(self) -> &'static str {
        match self {
            AxiomName::Cl => "cl",
            AxiomName::Em => "em",
            AxiomName::Nrm => "nrm",
            AxiomName::Opr => "opr",
            AxiomName::Trns => "trns",
            AxiomName::Bind => "bind",
            AxiomName::R => "r",
            AxiomName::Fmap => "fmap",
            AxiomName::Refl => "refl",
            AxiomName::Pll => "pll",
            AxiomName::Wlob => "wlob",
            AxiomName::Henk => "henk",
            AxiomName::Ufp => "ufp",
            AxiomName::Slob => "slob",
            AxiomName::Glb => "glb",
            AxiomName::Grz => "grz",
            AxiomName::Sgrz => "sgrz",
            AxiomName::Next => "next",
            AxiomName::Derv => "derv",
            AxiomName::Gd => "gd",
            AxiomName::Dot3 => "dot3",
            AxiomName::Ver => "ver",
            AxiomName::Boxbot => "boxbot",
            AxiomName::Nnv => "nnv",
            AxiomName::Nv => "nv",
        }
    }

    /// The ASCII surface form of the scheme; parses back to [`axiom`].
    pub fn surface(self) -> &'static str {
        match self {
            AxiomName::Cl => "((B -> A) -> B) -> B",
            AxiomName::Em => "A | ~A",
            AxiomName::Nrm => "box (A -> B) -> (box A -> box B)",
            AxiomName::Opr => "box (A & B) <-> box A & box B",
            AxiomName::Trns => "box A -> box box A",
            AxiomName::Bind => "box box A -> box A",
            AxiomName::R => "A -> box A",
            AxiomName::Fmap => "(A -> B) -> (box A -> box B)",
            AxiomName::Refl => "box A -> A",
            AxiomName::Pll => "(A | box box A) -> box A",
            AxiomName::Wlob => "box (box A -> A) -> box A",
            AxiomName::Henk => "boxdot (A <-> box A) -> A",
            AxiomName::Ufp => "boxdot (B <-> A) -> (boxdot (C <-> A) -> (B <-> C))",
            AxiomName::Slob => "(box A -> A) -> A",
            AxiomName::Glb => "(box A -> A) -> box A",
            AxiomName::Grz => "box (box (A -> box A) -> A) -> box A",
            AxiomName::Sgrz => "box (box (A -> box A) -> A) -> A",
            AxiomName::Next => "box A -> (((B -> A) -> B) -> B)",
            AxiomName::Derv => "box A -> ((B -> A) | B)",
            AxiomName::Gd => "(A -> B) | (B -> A)",
            AxiomName::Dot3 => "box (boxdot A -> B) | box (boxdot B -> A)",
            AxiomName::Ver => "box A",
            AxiomName::Boxbot => "box bot",
            AxiomName::Nnv => "~~box bot",
            AxiomName::Nv => "~box bot",
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The scheme for `name`, instantiated at the distinguished variables
/// `A`, `B`, `C`. Scheme validity on a frame quantifies over valuations of
/// these variables, which is equivalent at the frame level.
///
/// In `ufp` the substitution instance `A[B/p]` degenerates to `A` because the
/// scheme metavariable `A` is itself a variable not containing `p`.
pub fn axiom(name: AxiomName) -> Formula {
    let a = || Formula::var("A");
    let b = || Formula::var("B");
    let c = || Formula::var("C");
    match name {
        // ((B -> A) -> B) -> B
        AxiomName::Cl => Formula::imp(
            Formula::imp(Formula::imp(b(), a()), b()),
            b(),
        ),
        AxiomName::Em => Formula::or(a(), Formula::neg(a())),
        AxiomName::Nrm => Formula::imp(
            Formula::bx(Formula::imp(a(), b())),
            Formula::imp(Formula::bx(a()), Formula::bx(b())),
        ),
        AxiomName::Opr => Formula::iff(
            Formula::bx(Formula::and(a(), b())),
            Formula::and(Formula::bx(a()), Formula::bx(b())),
        ),
        AxiomName::Trns => Formula::imp(Formula::bx(a()), Formula::bx(Formula::bx(a()))),
        AxiomName::Bind => Formula::imp(Formula::bx(Formula::bx(a())), Formula::bx(a())),
        AxiomName::R => Formula::imp(a(), Formula::bx(a())),
        AxiomName::Fmap => Formula::imp(
            Formula::imp(a(), b()),
            Formula::imp(Formula::bx(a()), Formula::bx(b())),
        ),
        AxiomName::Refl => Formula::imp(Formula::bx(a()), a()),
        AxiomName::Pll => Formula::imp(
            Formula::or(a(), Formula::bx(Formula::bx(a()))),
            Formula::bx(a()),
        ),
        AxiomName::Wlob => Formula::imp(
            Formula::bx(Formula::imp(Formula::bx(a()), a())),
            Formula::bx(a()),
        ),
        AxiomName::Henk => Formula::imp(
            Formula::boxdot(Formula::iff(a(), Formula::bx(a()))),
            a(),
        ),
        AxiomName::Ufp => Formula::imp(
            Formula::boxdot(Formula::iff(b(), a())),
            Formula::imp(Formula::boxdot(Formula::iff(c(), a())), Formula::iff(b(), c())),
        ),
        AxiomName::Slob => Formula::imp(Formula::imp(Formula::bx(a()), a()), a()),
        AxiomName::Glb => Formula::imp(Formula::imp(Formula::bx(a()), a()), Formula::bx(a())),
        AxiomName::Grz => Formula::imp(
            Formula::bx(Formula::imp(
                Formula::bx(Formula::imp(a(), Formula::bx(a()))),
                a(),
            )),
            Formula::bx(a()),
        ),
        AxiomName::Sgrz => Formula::imp(
            Formula::bx(Formula::imp(
                Formula::bx(Formula::imp(a(), Formula::bx(a()))),
                a(),
            )),
            a(),
        ),
        AxiomName::Next => Formula::imp(
            Formula::bx(a()),
            Formula::imp(Formula::imp(Formula::imp(b(), a()), b()), b()),
        ),
        AxiomName::Derv => Formula::imp(
            Formula::bx(a()),
            Formula::or(Formula::imp(b(), a()), b()),
        ),
        AxiomName::Gd => Formula::or(Formula::imp(a(), b()), Formula::imp(b(), a())),
        AxiomName::Dot3 => Formula::or(
            Formula::bx(Formula::imp(Formula::boxdot(a()), b())),
            Formula::bx(Formula::imp(Formula::boxdot(b()), a())),
        ),
        AxiomName::Ver => Formula::bx(a()),
        AxiomName::Boxbot => Formula::bx(Formula::Bot),
        AxiomName::Nnv => Formula::neg(Formula::neg(Formula::bx(Formula::Bot))),
        AxiomName::Nv => Formula::neg(Formula::bx(Formula::Bot)),
    }
}

/// Names of the cataloged logics. Each maps to a finite extra-axiom set over
/// the minimal intuitionistic normal base (with `cl` standing in for the
/// classical base where needed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogicName {
    Ipc,
    Cl,
    Ki,
    K4i,
    C4i,
    Ri,
    Ti,
    S4i,
    Trivi,
    Plli,
    Gli,
    Sli,
    Cbi,
    Mhc,
    Km,
    Cbli,
    Lc,
    KmLc,
    Veri,
    Nvi,
    Nnvi,
    Glcl,
}

impl LogicName {
    pub const ALL: [LogicName; 22] = [
        LogicName::Ipc,
        LogicName::Cl,
        LogicName::Ki,
        LogicName::K4i,
        LogicName::C4i,
        LogicName::Ri,
        LogicName::Ti,
        LogicName::S4i,
        LogicName::Trivi,
        LogicName::Plli,
        LogicName::Gli,
        LogicName::Sli,
        LogicName::Cbi,
        LogicName::Mhc,
        LogicName::Km,
        LogicName::Cbli,
        LogicName::Lc,
        LogicName::KmLc,
        LogicName::Veri,
        LogicName::Nvi,
        LogicName::Nnvi,
        LogicName::Glcl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LogicName::Ipc => "IPC",
            LogicName::Cl => "Cl",
            LogicName::Ki => "K",
            LogicName::K4i => "K4",
            LogicName::C4i => "C4",
            LogicName::Ri => "R",
            LogicName::Ti => "T",
            LogicName::S4i => "S4",
            LogicName::Trivi => "Triv",
            LogicName::Plli => "PLL",
            LogicName::Gli => "GL",
            LogicName::Sli => "SL",
            LogicName::Cbi => "CB",
            LogicName::Mhc => "mHC",
            LogicName::Km => "KM",
            LogicName::Cbli => "CBL",
            LogicName::Lc => "LC",
            LogicName::KmLc => "KM+LC",
            LogicName::Veri => "Ver",
            LogicName::Nvi => "NV",
            LogicName::Nnvi => "NNV",
            LogicName::Glcl => "GLcl",
        }
    }

    pub fn parse(s: &str) -> Result<LogicName> {
        let t = s.to_ascii_lowercase();
        LogicName::ALL
            .iter()
            .copied()
            .find(|l| l.name().to_ascii_lowercase() == t)
            .ok_or_else(|| Error::UnknownLogic(s.to_string()))
    }

    /// The additional axioms over the minimal normal base.
    pub fn axioms(self) -> Vec<AxiomName> {
        use AxiomName::*;
        match self {
            LogicName::Ipc | LogicName::Ki => vec![],
            LogicName::Cl => vec![Cl],
            LogicName::K4i => vec![Trns],
            LogicName::C4i => vec![Bind],
            LogicName::Ri => vec![R],
            LogicName::Ti => vec![Refl],
            LogicName::S4i => vec![Refl, Trns],
            LogicName::Trivi => vec![Refl, R],
            LogicName::Plli => vec![Pll],
            LogicName::Gli => vec![Wlob],
            LogicName::Sli => vec![Slob],
            LogicName::Cbi => vec![Next],
            LogicName::Mhc => vec![R, Next],
            LogicName::Km => vec![Slob, Next],
            LogicName::Cbli => vec![Next, Wlob],
            LogicName::Lc => vec![Gd],
            LogicName::KmLc => vec![Slob, Next, Gd],
            LogicName::Veri => vec![Ver],
            LogicName::Nvi => vec![Nv],
            LogicName::Nnvi => vec![Nnv],
            LogicName::Glcl => vec![Cl, Wlob],
        }
    }

    /// True for the logics read over the classical base.
    pub fn classical(self) -> bool {
        matches!(self, LogicName::Cl | LogicName::Glcl)
    }
}

impl fmt::Display for LogicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
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
    fn subst_replaces_directly() {
        // box p -> p with bot for p
        let a = Formula::imp(Formula::bx(p()), p());
        let expect = Formula::imp(Formula::bx(Formula::Bot), Formula::Bot);
        assert_eq!(a.subst("p", &Formula::Bot), expect);
    }

    #[test]
    fn subst_identity_case() {
        assert_eq!(p().subst("p", &q()), q());
    }

    #[test]
    fn subst_under_box() {
        let a = Formula::bx(Formula::and(p(), q()));
        let expect = Formula::bx(Formula::and(p(), Formula::top()));
        assert_eq!(a.subst("q", &Formula::top()), expect);
    }

    #[test]
    fn subst_with_same_var_is_identity() {
        let a = Formula::imp(Formula::bx(Formula::or(p(), q())), Formula::neg(p()));
        assert_eq!(a.subst("p", &p()), a);
    }

    #[test]
    fn guardedness() {
        assert!(Formula::bx(p()).is_guarded("p"));
        assert!(!Formula::imp(p(), Formula::bx(p())).is_guarded("p"));
        assert!(Formula::or(q(), Formula::bx(Formula::imp(p(), p()))).is_guarded("p"));
        // absent variable is vacuously guarded
        assert!(q().is_guarded("p"));
    }

    #[test]
    fn guardedness_stable_under_guarded_subst() {
        let a = Formula::and(Formula::bx(p()), Formula::bx(Formula::imp(q(), p())));
        let b = Formula::imp(q(), q());
        assert!(a.is_guarded("p"));
        assert!(a.subst("p", &b).is_guarded("p"));
    }

    #[test]
    fn axiom_slob_shape() {
        let expect = Formula::imp(
            Formula::imp(Formula::bx(Formula::var("A")), Formula::var("A")),
            Formula::var("A"),
        );
        assert_eq!(axiom(AxiomName::Slob), expect);
    }

    #[test]
    fn axiom_derv_shape() {
        let expect = Formula::imp(
            Formula::bx(Formula::var("A")),
            Formula::or(
                Formula::imp(Formula::var("B"), Formula::var("A")),
                Formula::var("B"),
            ),
        );
        assert_eq!(axiom(AxiomName::Derv), expect);
    }

    #[test]
    fn axiom_next_shape() {
        let a = Formula::var("A");
        let b = Formula::var("B");
        let expect = Formula::imp(
            Formula::bx(a.clone()),
            Formula::imp(
                Formula::imp(Formula::imp(b.clone(), a), b.clone()),
                b,
            ),
        );
        assert_eq!(axiom(AxiomName::Next), expect);
    }

    #[test]
    fn analyze_basic() {
        let a = Formula::imp(Formula::bx(p()), q());
        let an = a.analyze().unwrap();
        assert_eq!(
            an.free_vars.iter().cloned().collect::<Vec<_>>(),
            vec!["p".to_string(), "q".to_string()]
        );
        assert_eq!(an.modal_depth, 1);
        assert_eq!(an.component, Component::Unimodal);

        let bot = Formula::Bot.analyze().unwrap();
        assert!(bot.free_vars.is_empty());
        assert_eq!(bot.modal_depth, 0);
    }

    #[test]
    fn analyze_rejects_mixed_tags() {
        let a = Formula::and(
            Formula::boxed(ModalityTag::I, p()),
            Formula::bx(q()),
        );
        assert_eq!(a.analyze().unwrap_err(), Error::MixedTags);
    }

    #[test]
    fn bimodal_formula_analyzes() {
        let a = Formula::and(
            Formula::boxed(ModalityTag::I, p()),
            Formula::boxed(ModalityTag::M, q()),
        );
        assert_eq!(a.analyze().unwrap().component, Component::Bimodal);
    }

    #[test]
    fn axiom_names_round_trip() {
        for name in AxiomName::ALL {
            assert_eq!(AxiomName::parse(name.name()).unwrap(), name);
        }
        assert!(AxiomName::parse("nosuch").is_err());
    }

    #[test]
    fn logic_names_round_trip() {
        for name in LogicName::ALL {
            assert_eq!(LogicName::parse(name.name()).unwrap(), name);
        }
        assert!(LogicName::parse("nosuch").is_err());
    }

    #[test]
    fn every_logic_has_axiom_set() {
        for name in LogicName::ALL {
            // finite set over the base; formulas build without panicking
            for ax in name.axioms() {
                let f = axiom(ax);
                assert!(f.is_unimodal());
            }
        }
    }
}
