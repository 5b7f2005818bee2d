//! The translation into the classical bimodal language, companion frames,
//! the reduction of strong-Löb theoremhood to classical provability logic,
//! and decision procedures for the latter (trees) and its linear extension
//! (chains).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::kripke::IntFrame;
use crate::poset::{full_mask, WorldMask};
use crate::syntax::{axiom, Formula, LogicName, ModalityTag};
use crate::verdict::{Verdict, Witness};

/// Classical frame with two accessibility relations, one for `[i]` and one
/// for `[m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BimodalFrame {
    n: usize,
    ri: Vec<WorldMask>,
    rm: Vec<WorldMask>,
}

impl BimodalFrame {
    pub fn new(n: usize, ri: Vec<WorldMask>, rm: Vec<WorldMask>) -> BimodalFrame {
        assert!(n <= 32 && ri.len() == n && rm.len() == n);
        BimodalFrame { n, ri, rm }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ri(&self, a: usize, b: usize) -> bool {
        self.ri[a] & (1 << b) != 0
    }

    pub fn rm(&self, a: usize, b: usize) -> bool {
        self.rm[a] & (1 << b) != 0
    }

    pub fn ri_row(&self, w: usize) -> WorldMask {
        self.ri[w]
    }

    pub fn rm_row(&self, w: usize) -> WorldMask {
        self.rm[w]
    }

    /// `[i]` relation is reflexive and transitive.
    pub fn s4_ri(&self) -> bool {
        (0..self.n).all(|w| {
            if self.ri[w] & (1 << w) == 0 {
                return false;
            }
            let mut rest = self.ri[w];
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.ri[v] & !self.ri[w] != 0 {
                    return false;
                }
            }
            true
        })
    }

    /// The interaction law `Rm = Ri ; Rm ; Ri`.
    pub fn mix_condition(&self) -> bool {
        for w in 0..self.n {
            let mut acc: WorldMask = 0;
            let mut vs = self.ri[w];
            while vs != 0 {
                let v = vs.trailing_zeros() as usize;
                vs &= vs - 1;
                let mut xs = self.rm[v];
                while xs != 0 {
                    let x = xs.trailing_zeros() as usize;
                    xs &= xs - 1;
                    acc |= self.ri[x];
                }
            }
            if acc != self.rm[w] {
                return false;
            }
        }
        true
    }

    /// The universal first-order interaction condition
    /// `forall y,z,w. (x <=i y and x <=i z) -> (z <=i y or (z <=i w -> x Rm w))`,
    /// evaluated literally over all quadruples.
    pub fn fo_next_check(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                if !self.ri(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !self.ri(x, z) || self.ri(z, y) {
                        continue;
                    }
                    for w in 0..n {
                        if self.ri(z, w) && !self.rm(x, w) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Strict part of `Ri` (pairs related one way only) is inside `Rm`.
    pub fn strict_ri_in_rm(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                if self.ri(a, b) && !self.ri(b, a) && !self.rm(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Truth set under a plain (arbitrary-set) classical valuation.
    pub fn eval(&self, val: &BTreeMap<String, WorldMask>, a: &Formula) -> Result<WorldMask> {
        let full = full_mask(self.n);
        Ok(match a {
            Formula::Bot => 0,
            Formula::Var(p) => *val
                .get(p)
                .ok_or_else(|| Error::UnboundVariable(p.clone()))?,
            Formula::And(x, y) => self.eval(val, x)? & self.eval(val, y)?,
            Formula::Or(x, y) => self.eval(val, x)? | self.eval(val, y)?,
            Formula::Impl(x, y) => (!self.eval(val, x)? | self.eval(val, y)?) & full,
            Formula::Box(tag, x) => {
                let rows = match tag {
                    ModalityTag::I => &self.ri,
                    ModalityTag::M => &self.rm,
                    ModalityTag::Plain => return Err(Error::MixedTags),
                };
                let xa = self.eval(val, x)?;
                let mut out: WorldMask = 0;
                for w in 0..self.n {
                    if rows[w] & !xa == 0 {
                        out |= 1 << w;
                    }
                }
                out
            }
        })
    }

    /// Classical frame validity with arbitrary valuations; first witness in
    /// enumeration order on failure.
    pub fn valid_on(&self, a: &Formula) -> Result<Verdict> {
        if !a.is_bimodal() {
            return Err(Error::MixedTags);
        }
        let vars: Vec<String> = a.free_vars().into_iter().collect();
        crate::kripke::guard_vars(self.n, vars.len())?;
        let full = full_mask(self.n);
        let k = vars.len();
        let bits = self.n * k;
        if bits > 26 {
            return Err(Error::ResourceLimit(format!(
                "{bits} valuation bits on a {}-world bimodal frame",
                self.n
            )));
        }
        let count = 1u64 << bits;
        for assignment in 0..count {
            let mut val = BTreeMap::new();
            for (i, name) in vars.iter().enumerate() {
                let set = ((assignment >> (i * self.n)) as WorldMask) & full;
                val.insert(name.clone(), set);
            }
            let truth = self.eval(&val, a)?;
            if truth != full {
                let world = (!truth & full).trailing_zeros() as usize;
                return Ok(Verdict::Refuted(Box::new(Witness::Bimodal {
                    frame: self.clone(),
                    valuation: val,
                    world,
                })));
            }
            if k == 0 {
                break;
            }
        }
        Ok(Verdict::Holds)
    }
}

/// The frame-level companion: `Ri` is the order, `Rm` the modal relation.
pub fn companion_frame(f: &IntFrame) -> BimodalFrame {
    let n = f.len();
    BimodalFrame {
        n,
        ri: (0..n).map(|w| f.order().up(w)).collect(),
        rm: (0..n).map(|w| f.prec_row(w)).collect(),
    }
}

/// The interaction axiom `[m] A <-> [i][m][i] A`.
pub fn mix_axiom() -> Formula {
    let a = Formula::var("A");
    Formula::iff(
        Formula::boxed(ModalityTag::M, a.clone()),
        Formula::boxed(
            ModalityTag::I,
            Formula::boxed(ModalityTag::M, Formula::boxed(ModalityTag::I, a)),
        ),
    )
}

/// Translation into the bimodal language: the box becomes `[m]` and every
/// subformula is prefixed with `[i]`, bottom up.
pub fn flat(a: &Formula) -> Formula {
    let i = |f: Formula| Formula::boxed(ModalityTag::I, f);
    match a {
        Formula::Bot => i(Formula::Bot),
        Formula::Var(p) => i(Formula::Var(p.clone())),
        Formula::Impl(x, y) => i(Formula::imp(flat(x), flat(y))),
        Formula::And(x, y) => i(Formula::and(flat(x), flat(y))),
        Formula::Or(x, y) => i(Formula::or(flat(x), flat(y))),
        Formula::Box(ModalityTag::Plain, x) => i(Formula::boxed(ModalityTag::M, flat(x))),
        Formula::Box(_, _) => i(a.clone()),
    }
}

/// Rewrites `[i] X` to `box X & X` throughout the translation, reading `[m]`
/// as the plain box: a classical unimodal formula that is a provability-logic
/// theorem exactly when the input is a strong-Löb/co-derivative theorem.
pub fn to_gl(a: &Formula) -> Formula {
    fn strip(f: &Formula) -> Formula {
        match f {
            Formula::Bot | Formula::Var(_) => f.clone(),
            Formula::Impl(x, y) => Formula::imp(strip(x), strip(y)),
            Formula::And(x, y) => Formula::and(strip(x), strip(y)),
            Formula::Or(x, y) => Formula::or(strip(x), strip(y)),
            Formula::Box(ModalityTag::I, x) => {
                let s = strip(x);
                Formula::and(Formula::bx(s.clone()), s)
            }
            Formula::Box(_, x) => Formula::bx(strip(x)),
        }
    }
    strip(&flat(a))
}

/// Finite transitive irreflexive model used as a countermodel witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlModel {
    pub n: usize,
    /// `rm[w]` = strictly later worlds seen from `w`; transitive, acyclic.
    pub rm: Vec<BTreeSet<usize>>,
    /// Worlds where each variable is true.
    pub val: BTreeMap<String, BTreeSet<usize>>,
}

impl GlModel {
    /// Truth of `a` (classical, plain box) at every world.
    pub fn eval(&self, a: &Formula) -> Result<Vec<bool>> {
        Ok(match a {
            Formula::Bot => vec![false; self.n],
            Formula::Var(p) => {
                let set = self.val.get(p).cloned().unwrap_or_default();
                (0..self.n).map(|w| set.contains(&w)).collect()
            }
            Formula::And(x, y) => {
                let (xa, ya) = (self.eval(x)?, self.eval(y)?);
                (0..self.n).map(|w| xa[w] && ya[w]).collect()
            }
            Formula::Or(x, y) => {
                let (xa, ya) = (self.eval(x)?, self.eval(y)?);
                (0..self.n).map(|w| xa[w] || ya[w]).collect()
            }
            Formula::Impl(x, y) => {
                let (xa, ya) = (self.eval(x)?, self.eval(y)?);
                (0..self.n).map(|w| !xa[w] || ya[w]).collect()
            }
            Formula::Box(ModalityTag::Plain, x) => {
                let xa = self.eval(x)?;
                (0..self.n)
                    .map(|w| self.rm[w].iter().all(|&v| xa[v]))
                    .collect()
            }
            Formula::Box(_, _) => return Err(Error::MixedTags),
        })
    }

    pub fn to_file_format(&self) -> String {
        let mut out = format!("worlds {}\n", self.n);
        for w in 0..self.n {
            for v in &self.rm[w] {
                out.push_str(&format!("prec {w} {v}\n"));
            }
        }
        for (name, set) in &self.val {
            let worlds: Vec<String> = set.iter().map(|w| w.to_string()).collect();
            out.push_str(&format!("val {} = {{{}}}\n", name, worlds.join(",")));
        }
        out
    }
}

impl fmt::Display for GlModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_format())
    }
}

/// Interned subformula table for the tableau.
struct Arena {
    nodes: Vec<Node>,
    ids: HashMap<Formula, u32>,
    formulas: Vec<Formula>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    Bot,
    Var(u32),
    Impl(u32, u32),
    And(u32, u32),
    Or(u32, u32),
    Boxed(u32),
}

impl Arena {
    fn new() -> Arena {
        Arena {
            nodes: Vec::new(),
            ids: HashMap::new(),
            formulas: Vec::new(),
        }
    }

    fn intern(&mut self, f: &Formula, vars: &mut Vec<String>) -> Result<u32> {
        if let Some(&id) = self.ids.get(f) {
            return Ok(id);
        }
        let node = match f {
            Formula::Bot => Node::Bot,
            Formula::Var(p) => {
                let vid = match vars.iter().position(|v| v == p) {
                    Some(i) => i as u32,
                    None => {
                        vars.push(p.clone());
                        (vars.len() - 1) as u32
                    }
                };
                Node::Var(vid)
            }
            Formula::Impl(x, y) => Node::Impl(self.intern(x, vars)?, self.intern(y, vars)?),
            Formula::And(x, y) => Node::And(self.intern(x, vars)?, self.intern(y, vars)?),
            Formula::Or(x, y) => Node::Or(self.intern(x, vars)?, self.intern(y, vars)?),
            Formula::Box(ModalityTag::Plain, x) => Node::Boxed(self.intern(x, vars)?),
            Formula::Box(_, _) => return Err(Error::MixedTags),
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.formulas.push(f.clone());
        self.ids.insert(f.clone(), id);
        Ok(id)
    }
}

/// A satisfiable saturated branch, as a tree of worlds.
struct TreeModel {
    true_vars: BTreeSet<u32>,
    children: Vec<TreeModel>,
}

struct Search<'a> {
    arena: &'a Arena,
    budget: u64,
}

const DEFAULT_BUDGET: u64 = 20_000_000;

impl<'a> Search<'a> {
    /// Looks for a transitive irreflexive tree model satisfying all of `pos`
    /// and refuting all of `neg`. The successor rule for a false box adds the
    /// box itself to the child, so the set of true boxes grows strictly along
    /// every branch and the search terminates.
    fn sat(&mut self, mut pos: BTreeSet<u32>, mut neg: BTreeSet<u32>) -> Result<Option<TreeModel>> {
        if self.budget == 0 {
            return Err(Error::BudgetExhausted(
                "provability-logic tableau".to_string(),
            ));
        }
        self.budget -= 1;
        // propositional saturation, one formula at a time
        let pick = |set: &BTreeSet<u32>, arena: &Arena| {
            set.iter()
                .copied()
                .find(|&id| {
                    matches!(
                        arena.nodes[id as usize],
                        Node::Impl(_, _) | Node::And(_, _) | Node::Or(_, _)
                    )
                })
        };
        if let Some(id) = pick(&pos, self.arena) {
            pos.remove(&id);
            match self.arena.nodes[id as usize] {
                Node::And(x, y) => {
                    let mut p = pos;
                    if !add(&mut p, &neg, x) || !add(&mut p, &neg, y) {
                        return Ok(None);
                    }
                    return self.sat(p, neg);
                }
                Node::Or(x, y) => {
                    for sub in [x, y] {
                        let mut p = pos.clone();
                        if add(&mut p, &neg, sub) {
                            if let Some(m) = self.sat(p, neg.clone())? {
                                return Ok(Some(m));
                            }
                        }
                    }
                    return Ok(None);
                }
                Node::Impl(x, y) => {
                    // x -> y true: either x false or y true
                    {
                        let mut nn = neg.clone();
                        if add(&mut nn, &pos, x) {
                            if let Some(m) = self.sat(pos.clone(), nn)? {
                                return Ok(Some(m));
                            }
                        }
                    }
                    let mut p = pos;
                    if add(&mut p, &neg, y) {
                        return self.sat(p, neg);
                    }
                    return Ok(None);
                }
                _ => unreachable!(),
            }
        }
        if let Some(id) = pick(&neg, self.arena) {
            neg.remove(&id);
            match self.arena.nodes[id as usize] {
                Node::And(x, y) => {
                    for sub in [x, y] {
                        let mut nn = neg.clone();
                        if add(&mut nn, &pos, sub) {
                            if let Some(m) = self.sat(pos.clone(), nn)? {
                                return Ok(Some(m));
                            }
                        }
                    }
                    return Ok(None);
                }
                Node::Or(x, y) => {
                    let mut nn = neg;
                    if !add(&mut nn, &pos, x) || !add(&mut nn, &pos, y) {
                        return Ok(None);
                    }
                    return self.sat(pos, nn);
                }
                Node::Impl(x, y) => {
                    // x -> y false: x true and y false
                    let mut p = pos;
                    let mut nn = neg;
                    if !add(&mut p, &nn, x) {
                        return Ok(None);
                    }
                    if !add(&mut nn, &p, y) {
                        return Ok(None);
                    }
                    return self.sat(p, nn);
                }
                _ => unreachable!(),
            }
        }
        // saturated: only bottom, variables and boxes remain
        for &id in &pos {
            if self.arena.nodes[id as usize] == Node::Bot {
                return Ok(None);
            }
        }
        let true_boxes: Vec<(u32, u32)> = pos
            .iter()
            .filter_map(|&id| match self.arena.nodes[id as usize] {
                Node::Boxed(c) => Some((id, c)),
                _ => None,
            })
            .collect();
        let mut children = Vec::new();
        for &id in &neg {
            if let Node::Boxed(c) = self.arena.nodes[id as usize] {
                // successor refuting c: inherits every true box and its body,
                // and makes the refuted box itself true there
                let mut cp: BTreeSet<u32> = BTreeSet::new();
                let mut cn: BTreeSet<u32> = BTreeSet::new();
                if !add(&mut cn, &cp, c) {
                    return Ok(None);
                }
                let mut ok = true;
                for &(bid, body) in &true_boxes {
                    ok = ok && add(&mut cp, &cn, bid) && add(&mut cp, &cn, body);
                }
                ok = ok && add(&mut cp, &cn, id);
                if !ok {
                    return Ok(None);
                }
                match self.sat(cp, cn)? {
                    Some(m) => children.push(m),
                    None => return Ok(None),
                }
            }
        }
        let true_vars = pos
            .iter()
            .filter_map(|&id| match self.arena.nodes[id as usize] {
                Node::Var(v) => Some(v),
                _ => None,
            })
            .collect();
        Ok(Some(TreeModel {
            true_vars,
            children,
        }))
    }
}

/// Inserts `id` unless it already sits on the opposite side.
fn add(set: &mut BTreeSet<u32>, opposite: &BTreeSet<u32>, id: u32) -> bool {
    if opposite.contains(&id) {
        return false;
    }
    set.insert(id);
    true
}

fn tree_to_model(root: &TreeModel, vars: &[String]) -> GlModel {
    fn walk(
        t: &TreeModel,
        rm: &mut Vec<BTreeSet<usize>>,
        val: &mut Vec<BTreeSet<usize>>,
    ) -> (usize, Vec<usize>) {
        let w = rm.len();
        rm.push(BTreeSet::new());
        for &v in &t.true_vars {
            val[v as usize].insert(w);
        }
        let mut descendants = vec![w];
        let mut below = Vec::new();
        for child in &t.children {
            let (_, ds) = walk(child, rm, val);
            below.extend(ds);
        }
        for &d in &below {
            rm[w].insert(d);
        }
        descendants.extend(below);
        (w, descendants)
    }
    let mut rm = Vec::new();
    let mut val = vec![BTreeSet::new(); vars.len()];
    walk(root, &mut rm, &mut val);
    GlModel {
        n: rm.len(),
        rm,
        val: vars
            .iter()
            .cloned()
            .zip(val)
            .collect(),
    }
}

/// Exact decision of classical provability-logic theoremhood via backtracking
/// search for a transitive irreflexive tree countermodel. The tree depth is
/// bounded by the number of distinct boxed subformulas plus one and the
/// branching by the number of refuted boxes per node.
pub fn decide_gl(a: &Formula) -> Result<Verdict> {
    if !a.is_unimodal() {
        return Err(Error::MixedTags);
    }
    let mut arena = Arena::new();
    let mut vars = Vec::new();
    let root = arena.intern(a, &mut vars)?;
    let mut search = Search {
        arena: &arena,
        budget: DEFAULT_BUDGET,
    };
    let mut neg = BTreeSet::new();
    neg.insert(root);
    match search.sat(BTreeSet::new(), neg)? {
        None => Ok(Verdict::Holds),
        Some(tree) => {
            let model = tree_to_model(&tree, &vars);
            // countermodels are verified, not trusted
            let truth = model.eval(a)?;
            debug_assert!(!truth[0], "tableau produced a non-refuting model");
            Ok(Verdict::Refuted(Box::new(Witness::Classical {
                model,
                world: 0,
            })))
        }
    }
}

/// Exact strong-Löb theoremhood via the bimodal reduction.
pub fn decide_km(a: &Formula) -> Result<Verdict> {
    if !a.is_unimodal() {
        return Err(Error::MixedTags);
    }
    decide_gl(&to_gl(a))
}

/// Exact decision for the linear extension: the translation is checked on all
/// strict linear orders up to modal depth plus one.
pub fn decide_km_lc(a: &Formula) -> Result<Verdict> {
    if !a.is_unimodal() {
        return Err(Error::MixedTags);
    }
    let g = to_gl(a);
    let vars: Vec<String> = g.free_vars().into_iter().collect();
    let max_len = g.modal_depth() + 1;
    for len in 1..=max_len {
        let bits = vars.len() * len;
        if bits > 22 {
            return Err(Error::ResourceLimit(format!(
                "{} valuation bits on a chain of {len}",
                bits
            )));
        }
        let model_rm: Vec<BTreeSet<usize>> =
            (0..len).map(|i| ((i + 1)..len).collect()).collect();
        for assignment in 0u64..(1 << bits) {
            let mut val = BTreeMap::new();
            for (vi, name) in vars.iter().enumerate() {
                let set: BTreeSet<usize> = (0..len)
                    .filter(|w| assignment >> (vi * len + w) & 1 != 0)
                    .collect();
                val.insert(name.clone(), set);
            }
            let model = GlModel {
                n: len,
                rm: model_rm.clone(),
                val,
            };
            let truth = model.eval(&g)?;
            if let Some(world) = truth.iter().position(|t| !t) {
                return Ok(Verdict::Refuted(Box::new(Witness::Classical {
                    model,
                    world,
                })));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Axiom sets of the two canonical bimodal companions of a cataloged logic:
/// the base interaction axioms plus the translated axioms, and for the
/// greatest companion additionally the `[i]`-Grzegorczyk scheme.
pub fn tau_mix_axioms(logic: LogicName) -> Vec<Formula> {
    use crate::syntax::AxiomName;
    let mut out = vec![
        axiom(AxiomName::Nrm).retag(ModalityTag::I),
        axiom(AxiomName::Refl).retag(ModalityTag::I),
        axiom(AxiomName::Trns).retag(ModalityTag::I),
        axiom(AxiomName::Nrm).retag(ModalityTag::M),
        mix_axiom(),
    ];
    for ax in logic.axioms() {
        out.push(flat(&axiom(ax)));
    }
    out
}

pub fn sigma_mix_axioms(logic: LogicName) -> Vec<Formula> {
    use crate::syntax::AxiomName;
    let mut out = tau_mix_axioms(logic);
    out.push(axiom(AxiomName::Sgrz).retag(ModalityTag::I));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::FrameClass;
    use crate::poset::Poset;
    use crate::syntax::AxiomName;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }
    fn i(f: Formula) -> Formula {
        Formula::boxed(ModalityTag::I, f)
    }
    fn m(f: Formula) -> Formula {
        Formula::boxed(ModalityTag::M, f)
    }

    #[test]
    fn flat_unfolds() {
        assert_eq!(flat(&p()), i(p()));
        assert_eq!(flat(&Formula::bx(p())), i(m(i(p()))));
        assert_eq!(
            flat(&Formula::imp(p(), q())),
            i(Formula::imp(i(p()), i(q())))
        );
    }

    #[test]
    fn to_gl_unfolds() {
        let e = |f: Formula| Formula::and(Formula::bx(f.clone()), f);
        assert_eq!(to_gl(&Formula::Bot), e(Formula::Bot));
        assert_eq!(to_gl(&p()), e(p()));
        // box p becomes box (box (box p & p)) & box (box p & p)
        assert_eq!(to_gl(&Formula::bx(p())), e(Formula::bx(e(p()))));
    }

    #[test]
    fn decide_gl_examples() {
        assert_eq!(decide_gl(&axiom(AxiomName::Wlob)).unwrap(), Verdict::Holds);
        assert_eq!(
            decide_gl(&Formula::bx(Formula::top())).unwrap(),
            Verdict::Holds
        );
        match decide_gl(&Formula::neg(Formula::bx(Formula::Bot))).unwrap() {
            Verdict::Refuted(w) => match *w {
                Witness::Classical { model, world } => {
                    assert_eq!(model.n, 1);
                    assert!(model.rm[0].is_empty());
                    assert_eq!(world, 0);
                }
                other => panic!("unexpected witness {other:?}"),
            },
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn decide_gl_classic_theorems_and_failures() {
        // transitivity and the classical base hold
        assert_eq!(decide_gl(&axiom(AxiomName::Trns)).unwrap(), Verdict::Holds);
        assert_eq!(decide_gl(&axiom(AxiomName::Cl)).unwrap(), Verdict::Holds);
        assert_eq!(decide_gl(&axiom(AxiomName::Em)).unwrap(), Verdict::Holds);
        // reflection fails
        assert!(decide_gl(&axiom(AxiomName::Refl)).unwrap().refuted());
        // produced countermodels refute at the root
        if let Verdict::Refuted(w) = decide_gl(&axiom(AxiomName::Refl)).unwrap() {
            if let Witness::Classical { model, world } = *w {
                assert!(!model.eval(&axiom(AxiomName::Refl)).unwrap()[world]);
            }
        }
    }

    #[test]
    fn decide_km_examples() {
        assert_eq!(decide_km(&axiom(AxiomName::Slob)).unwrap(), Verdict::Holds);
        assert_eq!(decide_km(&axiom(AxiomName::R)).unwrap(), Verdict::Holds);
        assert!(decide_km(&axiom(AxiomName::Gd)).unwrap().refuted());
    }

    #[test]
    fn decide_km_lc_examples() {
        assert_eq!(decide_km_lc(&axiom(AxiomName::Gd)).unwrap(), Verdict::Holds);
        assert!(decide_km_lc(&axiom(AxiomName::Em)).unwrap().refuted());
        assert_eq!(
            decide_km_lc(&axiom(AxiomName::Slob)).unwrap(),
            Verdict::Holds
        );
    }

    #[test]
    fn companion_of_chain() {
        let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
        let f = IntFrame::normalize(leq, &[(0, 1)]).unwrap();
        let c = companion_frame(&f);
        assert!(c.s4_ri());
        assert!(c.mix_condition());
        assert_eq!(c.rm_row(0), 0b10);
        assert_eq!(c.rm_row(1), 0b00);
        assert!(c.fo_next_check());
    }

    #[test]
    fn companion_of_reflexive_point() {
        let f = IntFrame::normalize(Poset::discrete(1), &[(0, 0)]).unwrap();
        let c = companion_frame(&f);
        assert_eq!(c.ri_row(0), 0b1);
        assert_eq!(c.rm_row(0), 0b1);
        assert!(c.fo_next_check());
    }

    #[test]
    fn fo_next_fails_without_next() {
        let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
        let f = IntFrame::normalize(leq, &[]).unwrap();
        assert!(!companion_frame(&f).fo_next_check());
    }

    #[test]
    fn companions_satisfy_mix_exhaustively() {
        for n in 1..=3 {
            for f in crate::kripke::enumerate_frames(n, FrameClass::All).unwrap() {
                let c = companion_frame(&f);
                assert!(c.s4_ri());
                assert!(c.mix_condition());
                assert!(c.valid_on(&mix_axiom()).unwrap().holds());
            }
        }
    }

    #[test]
    fn bimodal_validity_matches_intuitionistic_on_chain() {
        let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
        let f = IntFrame::normalize(leq, &[(0, 1)]).unwrap();
        let c = companion_frame(&f);
        let peirce = axiom(AxiomName::Cl);
        assert!(!c.valid_on(&flat(&peirce)).unwrap().holds());
        assert!(!f.valid_on(&peirce).unwrap().holds());
    }

    #[test]
    fn i_fixpoint_on_discrete_ri() {
        // [i]A <-> A is valid whenever Ri is the identity
        let f = BimodalFrame::new(2, vec![0b01, 0b10], vec![0b10, 0b00]);
        let a = Formula::iff(Formula::boxed(ModalityTag::I, Formula::var("A")), Formula::var("A"));
        assert!(f.valid_on(&a).unwrap().holds());
    }

    #[test]
    fn companion_axiom_generators() {
        let tau = tau_mix_axioms(LogicName::Km);
        assert_eq!(tau.len(), 5 + 2);
        let sigma = sigma_mix_axioms(LogicName::Km);
        assert_eq!(sigma.len(), tau.len() + 1);
        for f in sigma {
            assert!(f.is_bimodal());
        }
    }
}
