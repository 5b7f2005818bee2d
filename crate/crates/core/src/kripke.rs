//! Finite birelational frames, forcing, frame-condition checkers, frame
//! enumeration and bounded countermodel search.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poset::{enumerate_posets, Poset, WorldMask};
use crate::syntax::{AxiomName, Formula, LogicName, ModalityTag};
use crate::verdict::{Verdict, Witness};

/// Search limits for the exhaustive valuation quantifiers. `IMLK_MAX_WORLDS`
/// overrides the world bound.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_worlds: usize,
    pub max_vars: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_worlds: 6,
            max_vars: 4,
        }
    }
}

fn limits() -> Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    *LIMITS.get_or_init(|| {
        let mut l = Limits::default();
        if let Ok(s) = std::env::var("IMLK_MAX_WORLDS") {
            if let Ok(n) = s.parse::<usize>() {
                l.max_worlds = n.min(32);
            }
        }
        l
    })
}

pub(crate) fn guard_vars(frame_worlds: usize, vars: usize) -> Result<()> {
    let l = limits();
    if frame_worlds > l.max_worlds && vars > l.max_vars {
        return Err(Error::ResourceLimit(format!(
            "{vars} free variables on a frame with {frame_worlds} worlds \
             (limits: {} variables beyond {} worlds)",
            l.max_vars, l.max_worlds
        )));
    }
    Ok(())
}

/// A finite birelational frame `(W, <=, prec)`: a poset order for the
/// intuitionistic connectives and an accessibility relation for the box,
/// closed under composition with the order on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntFrame {
    leq: Poset,
    /// `prec[w]` = worlds reachable by the modal relation.
    prec: Vec<WorldMask>,
}

impl IntFrame {
    /// Closes `prec_raw` under pre- and post-composition with the order:
    /// the least relation containing it that the box semantics tolerates.
    pub fn normalize(leq: Poset, prec_raw: &[(usize, usize)]) -> Result<IntFrame> {
        let n = leq.len();
        let mut prec = vec![0 as WorldMask; n];
        for &(a, b) in prec_raw {
            if a >= n || b >= n {
                return Err(Error::NotPoset(format!("prec edge ({a},{b}) out of range")));
            }
            prec[a] |= 1 << b;
        }
        loop {
            let mut next = vec![0 as WorldMask; n];
            for w in 0..n {
                // (leq ; prec ; leq)[w]
                let mut mid: WorldMask = 0;
                let mut ws = leq.up(w);
                while ws != 0 {
                    let v = ws.trailing_zeros() as usize;
                    ws &= ws - 1;
                    mid |= prec[v];
                }
                let mut acc: WorldMask = 0;
                let mut ms = mid;
                while ms != 0 {
                    let x = ms.trailing_zeros() as usize;
                    ms &= ms - 1;
                    acc |= leq.up(x);
                }
                next[w] = acc;
            }
            if next == prec {
                break;
            }
            prec = next;
        }
        Ok(IntFrame { leq, prec })
    }

    /// Wraps rows that are already closed; validates the closure equation.
    pub fn from_rows(leq: Poset, prec: Vec<WorldMask>) -> Result<IntFrame> {
        let f = IntFrame { leq, prec };
        if !f.is_closed() {
            return Err(Error::NotPoset(
                "prec is not closed under composition with the order".to_string(),
            ));
        }
        Ok(f)
    }

    /// `leq ; prec ; leq = prec`.
    pub fn is_closed(&self) -> bool {
        let n = self.len();
        for w in 0..n {
            let mut acc: WorldMask = 0;
            let mut ws = self.leq.up(w);
            while ws != 0 {
                let v = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                let mut ms = self.prec[v];
                while ms != 0 {
                    let x = ms.trailing_zeros() as usize;
                    ms &= ms - 1;
                    acc |= self.leq.up(x);
                }
            }
            if acc != self.prec[w] {
                return false;
            }
        }
        true
    }

    /// Diagnostic: `leq ; prec ⊆ prec ; leq` (the weakest workable
    /// interaction condition).
    pub fn weak_interaction(&self) -> bool {
        let n = self.len();
        for w in 0..n {
            for v in 0..n {
                if !self.leq.le(w, v) {
                    continue;
                }
                let mut xs = self.prec[v];
                while xs != 0 {
                    let x = xs.trailing_zeros() as usize;
                    xs &= xs - 1;
                    // need u with w prec u <= x
                    let mut found = false;
                    let mut us = self.prec[w];
                    while us != 0 {
                        let u = us.trailing_zeros() as usize;
                        us &= us - 1;
                        if self.leq.le(u, x) {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Diagnostic: `leq ; prec ⊆ prec`.
    pub fn pre_closed(&self) -> bool {
        let n = self.len();
        for w in 0..n {
            let mut ws = self.leq.up(w);
            while ws != 0 {
                let v = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                if self.prec[v] & !self.prec[w] != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn order(&self) -> &Poset {
        &self.leq
    }

    pub fn prec_row(&self, w: usize) -> WorldMask {
        self.prec[w]
    }

    pub fn prec(&self, a: usize, b: usize) -> bool {
        self.prec[a] & (1 << b) != 0
    }

    pub fn full(&self) -> WorldMask {
        self.leq.full()
    }

    /// Truth set of `a` under an up-set valuation; the box quantifies over
    /// `prec`, implication over the order.
    pub fn eval(&self, v: &Valuation, a: &Formula) -> Result<WorldMask> {
        let n = self.len();
        let full = self.full();
        match a {
            Formula::Bot => Ok(0),
            Formula::Var(p) => v
                .get(p)
                .ok_or_else(|| Error::UnboundVariable(p.clone())),
            Formula::And(x, y) => Ok(self.eval(v, x)? & self.eval(v, y)?),
            Formula::Or(x, y) => Ok(self.eval(v, x)? | self.eval(v, y)?),
            Formula::Impl(x, y) => {
                let xa = self.eval(v, x)?;
                let ya = self.eval(v, y)?;
                let bad = xa & !ya;
                let mut out: WorldMask = 0;
                for w in 0..n {
                    if self.leq.up(w) & bad == 0 {
                        out |= 1 << w;
                    }
                }
                Ok(out & full)
            }
            Formula::Box(ModalityTag::Plain, x) => {
                let xa = self.eval(v, x)?;
                let mut out: WorldMask = 0;
                for w in 0..n {
                    if self.prec[w] & !xa == 0 {
                        out |= 1 << w;
                    }
                }
                Ok(out & full)
            }
            Formula::Box(_, _) => Err(Error::MixedTags),
        }
    }

    /// Single-world forcing.
    pub fn forces(&self, v: &Valuation, w: usize, a: &Formula) -> Result<bool> {
        a.check_tags()?;
        Ok(self.eval(v, a)? & (1 << w) != 0)
    }

    /// Frame validity: forcing at every world under every up-set valuation of
    /// the free variables. On failure the first witness in enumeration order
    /// is returned (upsets ascending as bitmasks, first variable slowest,
    /// lowest failing world).
    pub fn valid_on(&self, a: &Formula) -> Result<Verdict> {
        a.check_tags()?;
        if !a.is_unimodal() {
            return Err(Error::MixedTags);
        }
        let vars: Vec<String> = a.free_vars().into_iter().collect();
        guard_vars(self.len(), vars.len())?;
        let upsets = self.leq.upsets();
        let full = self.full();
        let k = vars.len();
        let mut idx = vec![0usize; k];
        loop {
            let mut v = Valuation::new();
            for (i, name) in vars.iter().enumerate() {
                v.set(name, upsets[idx[i]]);
            }
            let truth = self.eval(&v, a)?;
            if truth != full {
                let world = (!truth & full).trailing_zeros() as usize;
                return Ok(Verdict::Refuted(Box::new(Witness::Kripke {
                    frame: self.clone(),
                    valuation: v,
                    world,
                })));
            }
            // odometer, last variable fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(Verdict::Holds);
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < upsets.len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    /// Up(W)-Noetherianity: every proper up-set `A` has a point in
    /// `box A - A`.
    pub fn is_noetherian(&self) -> bool {
        let full = self.full();
        for a in self.leq.upsets() {
            if a == full {
                continue;
            }
            let mut boxed: WorldMask = 0;
            for w in 0..self.len() {
                if self.prec[w] & !a == 0 {
                    boxed |= 1 << w;
                }
            }
            if boxed & !a == 0 {
                return false;
            }
        }
        true
    }

    pub fn is_transitive(&self) -> bool {
        for w in 0..self.len() {
            let mut rest = self.prec[w];
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.prec[v] & !self.prec[w] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The relational condition from the correspondence table, evaluated
    /// literally. Axioms without a tabulated condition are unsupported.
    pub fn frame_condition(&self, name: AxiomName) -> Result<bool> {
        let n = self.len();
        let strict = self.leq.strict_rows();
        Ok(match name {
            // order is discrete
            AxiomName::Cl => (0..n).all(|w| self.leq.up(w) == 1 << w),
            AxiomName::Trns => self.is_transitive(),
            // prec ⊆ prec ; prec
            AxiomName::Bind => (0..n).all(|w| {
                let mut via: WorldMask = 0;
                let mut rest = self.prec[w];
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    via |= self.prec[v];
                }
                self.prec[w] & !via == 0
            }),
            AxiomName::R => (0..n).all(|w| self.prec[w] & !self.leq.up(w) == 0),
            AxiomName::Refl => (0..n).all(|w| self.leq.up(w) & !self.prec[w] == 0),
            AxiomName::Next => (0..n).all(|w| strict[w] & !self.prec[w] == 0),
            AxiomName::Ver => (0..n).all(|w| self.prec[w] == 0),
            AxiomName::Nv => (0..n).all(|w| self.prec[w] != 0),
            // every world sees (in the order) a world with no successor
            AxiomName::Nnv => (0..n).all(|w| {
                let mut rest = self.leq.up(w);
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.prec[v] == 0 {
                        return true;
                    }
                }
                false
            }),
            other => return Err(Error::UnsupportedCondition(other.name().to_string())),
        })
    }

    /// Writes the frame file format (`worlds N`, `leq a b`, `prec a b`).
    /// Reflexive order edges are omitted.
    pub fn to_file_format(&self) -> String {
        let n = self.len();
        let mut out = format!("worlds {n}\n");
        for w in 0..n {
            for z in 0..n {
                if w != z && self.leq.le(w, z) {
                    out.push_str(&format!("leq {w} {z}\n"));
                }
            }
        }
        for w in 0..n {
            for z in 0..n {
                if self.prec(w, z) {
                    out.push_str(&format!("prec {w} {z}\n"));
                }
            }
        }
        out
    }

    /// Parses the frame file format; the order is closed reflexively and
    /// transitively, and `prec` is normalized.
    pub fn parse(text: &str) -> Result<IntFrame> {
        let mut n: Option<usize> = None;
        let mut leq_edges = Vec::new();
        let mut prec_edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(k) => &raw[..k],
                None => raw,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.is_empty() {
                continue;
            }
            let bad = |message: String| Error::BadFile {
                line: i + 1,
                message,
            };
            match words[0] {
                "worlds" => {
                    if words.len() != 2 {
                        return Err(bad("expected `worlds N`".into()));
                    }
                    n = Some(
                        words[1]
                            .parse()
                            .map_err(|_| bad("bad world count".into()))?,
                    );
                }
                "leq" | "prec" if words.len() == 3 => {
                    let a = words[1].parse().map_err(|_| bad("bad index".into()))?;
                    let b = words[2].parse().map_err(|_| bad("bad index".into()))?;
                    if words[0] == "leq" {
                        leq_edges.push((a, b));
                    } else {
                        prec_edges.push((a, b));
                    }
                }
                w => return Err(bad(format!("unknown directive `{w}`"))),
            }
        }
        let n = n.ok_or(Error::BadFile {
            line: 0,
            message: "missing `worlds N`".to_string(),
        })?;
        let leq = Poset::from_edges(n, &leq_edges)?;
        IntFrame::normalize(leq, &prec_edges)
    }
}

impl fmt::Display for IntFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_format())
    }
}

/// Up-set valuation of propositional variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<String, WorldMask>);

impl Valuation {
    pub fn new() -> Valuation {
        Valuation(BTreeMap::new())
    }

    pub fn set(&mut self, name: &str, worlds: WorldMask) {
        self.0.insert(name.to_string(), worlds);
    }

    pub fn get(&self, name: &str) -> Option<WorldMask> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, WorldMask)> {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    /// Checks that every assigned set is upward closed in `frame`.
    pub fn check_upsets(&self, frame: &IntFrame) -> Result<()> {
        for (name, set) in self.iter() {
            if !frame.order().is_upset(set) {
                return Err(Error::NotPoset(format!(
                    "valuation of `{name}` is not an up-set"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, set) in self.iter() {
            let worlds: Vec<String> = (0..32)
                .filter(|w| set & (1 << w) != 0)
                .map(|w| w.to_string())
                .collect();
            writeln!(f, "val {} = {{{}}}", name, worlds.join(","))?;
        }
        Ok(())
    }
}

/// Decidable frame classes for the logics with a known relational or
/// Noetherian characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameClass {
    All,
    K,
    K4,
    R,
    T,
    S4,
    Triv,
    Cb,
    Mhc,
    Gl,
    Sl,
    Km,
    KmLc,
    Ver,
    Nv,
    Nnv,
}

impl FrameClass {
    pub fn for_logic(logic: LogicName) -> Result<FrameClass> {
        Ok(match logic {
            LogicName::Ki => FrameClass::K,
            LogicName::K4i => FrameClass::K4,
            LogicName::Ri => FrameClass::R,
            LogicName::Ti => FrameClass::T,
            LogicName::S4i => FrameClass::S4,
            LogicName::Trivi => FrameClass::Triv,
            LogicName::Cbi => FrameClass::Cb,
            LogicName::Mhc => FrameClass::Mhc,
            LogicName::Gli => FrameClass::Gl,
            LogicName::Sli => FrameClass::Sl,
            LogicName::Km => FrameClass::Km,
            LogicName::KmLc => FrameClass::KmLc,
            LogicName::Veri => FrameClass::Ver,
            LogicName::Nvi => FrameClass::Nv,
            LogicName::Nnvi => FrameClass::Nnv,
            other => return Err(Error::UnsupportedLogic(other.name().to_string())),
        })
    }

    pub fn parse(s: &str) -> Result<FrameClass> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(FrameClass::All);
        }
        FrameClass::for_logic(LogicName::parse(s)?)
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::All => "ALL",
            FrameClass::K => "K",
            FrameClass::K4 => "K4",
            FrameClass::R => "R",
            FrameClass::T => "T",
            FrameClass::S4 => "S4",
            FrameClass::Triv => "Triv",
            FrameClass::Cb => "CB",
            FrameClass::Mhc => "mHC",
            FrameClass::Gl => "GL",
            FrameClass::Sl => "SL",
            FrameClass::Km => "KM",
            FrameClass::KmLc => "KM+LC",
            FrameClass::Ver => "Ver",
            FrameClass::Nv => "NV",
            FrameClass::Nnv => "NNV",
        }
    }

    pub fn contains(self, f: &IntFrame) -> bool {
        let cond = |n: AxiomName| f.frame_condition(n).expect("tabulated condition");
        match self {
            FrameClass::All | FrameClass::K => true,
            FrameClass::K4 => cond(AxiomName::Trns),
            FrameClass::R => cond(AxiomName::R),
            FrameClass::T => cond(AxiomName::Refl),
            FrameClass::S4 => cond(AxiomName::Refl) && cond(AxiomName::Trns),
            FrameClass::Triv => cond(AxiomName::Refl) && cond(AxiomName::R),
            FrameClass::Cb => cond(AxiomName::Next),
            FrameClass::Mhc => cond(AxiomName::R) && cond(AxiomName::Next),
            FrameClass::Gl => f.is_transitive() && f.is_noetherian(),
            FrameClass::Sl => f.is_transitive() && f.is_noetherian() && cond(AxiomName::R),
            // on finite frames: prec equals the strict order
            FrameClass::Km => f.prec == f.order().strict_rows(),
            FrameClass::KmLc => f.prec == f.order().strict_rows() && f.order().is_chain(),
            FrameClass::Ver => cond(AxiomName::Ver),
            FrameClass::Nv => cond(AxiomName::Nv),
            FrameClass::Nnv => cond(AxiomName::Nnv),
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Streams every frame on `n` worlds in the class, in deterministic order:
/// labeled posets in catalog order, and for each poset all closed `prec`
/// relations in ascending bitmask order (bit `w*n + x` for `w prec x`).
pub fn for_each_frame<F>(n: usize, class: FrameClass, mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&IntFrame) -> ControlFlow<()>,
{
    if n > 6 {
        return Err(Error::ResourceLimit(format!(
            "frame enumeration on {n} worlds (cap 6)"
        )));
    }
    for leq in enumerate_posets(n) {
        // prec = strict order is forced in these classes
        if matches!(class, FrameClass::Km | FrameClass::KmLc) {
            if class == FrameClass::KmLc && !leq.is_chain() {
                continue;
            }
            let frame = IntFrame {
                prec: leq.strict_rows(),
                leq,
            };
            debug_assert!(frame.is_closed());
            if let ControlFlow::Break(()) = f(&frame) {
                return Ok(ControlFlow::Break(()));
            }
            continue;
        }
        let flow = for_each_closed_prec(&leq, |prec| {
            let frame = IntFrame {
                leq: leq.clone(),
                prec: prec.to_vec(),
            };
            if class.contains(&frame) {
                f(&frame)
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Materialized variant of [`for_each_frame`].
pub fn enumerate_frames(n: usize, class: FrameClass) -> Result<Vec<IntFrame>> {
    let mut out = Vec::new();
    let _ = for_each_frame(n, class, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Enumerates the relations closed under `leq ; prec ; leq = prec`, i.e. the
/// up-sets of the product order (dual order on sources, order on targets), in
/// ascending bitmask order. Emits rows indexed by source world.
fn for_each_closed_prec<F>(leq: &Poset, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[WorldMask]) -> ControlFlow<()>,
{
    let n = leq.len();
    let bits = n * n;
    // product_up[b] = strict successors of pair b in the product order
    let mut product_up = vec![0u64; bits];
    for w in 0..n {
        for x in 0..n {
            let b = w * n + x;
            let mut mask = 0u64;
            for w2 in 0..n {
                if !leq.le(w2, w) {
                    continue;
                }
                for x2 in 0..n {
                    if leq.le(x, x2) {
                        mask |= 1 << (w2 * n + x2);
                    }
                }
            }
            product_up[b] = mask & !(1 << b);
        }
    }
    let mut product_down = vec![0u64; bits];
    for b in 0..bits {
        let mut rest = product_up[b];
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            product_down[c] |= 1 << b;
        }
    }
    let mut rows = vec![0 as WorldMask; n];
    // decide the highest bit first, excluded before included, so emission is
    // in ascending numeric order
    fn rec<F>(
        bit: isize,
        chosen: u64,
        forced0: u64,
        forced1: u64,
        up: &[u64],
        down: &[u64],
        n: usize,
        rows: &mut [WorldMask],
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[WorldMask]) -> ControlFlow<()>,
    {
        if bit < 0 {
            for w in 0..n {
                let mut m: WorldMask = 0;
                for x in 0..n {
                    if chosen & (1 << (w * n + x)) != 0 {
                        m |= 1 << x;
                    }
                }
                rows[w] = m;
            }
            return f(rows);
        }
        let b = bit as usize;
        let can0 = forced1 & (1 << b) == 0;
        let can1 = forced0 & (1 << b) == 0;
        if can0 {
            // excluding b forces all its product-predecessors out
            if down[b] & chosen == 0 && down[b] & forced1 == 0 {
                rec(
                    bit - 1,
                    chosen,
                    forced0 | down[b] | (1 << b),
                    forced1,
                    up,
                    down,
                    n,
                    rows,
                    f,
                )?;
            }
        }
        if can1 {
            // including b forces all its product-successors in
            if up[b] & forced0 == 0 {
                rec(
                    bit - 1,
                    chosen | (1 << b),
                    forced0,
                    forced1 | up[b] | (1 << b),
                    up,
                    down,
                    n,
                    rows,
                    f,
                )?;
            }
        }
        ControlFlow::Continue(())
    }
    rec(
        bits as isize - 1,
        0,
        0,
        0,
        &product_up,
        &product_down,
        n,
        &mut rows,
        &mut f,
    )
}

/// Searches frames of the class for a refutation of `a`, smallest world count
/// first. A negative answer is only a bounded claim.
pub fn countermodel(a: &Formula, class: FrameClass, max_n: usize) -> Result<Verdict> {
    if !a.is_unimodal() {
        return Err(Error::MixedTags);
    }
    let vars: Vec<String> = a.free_vars().into_iter().collect();
    let mut found: Option<Verdict> = None;
    for n in 1..=max_n {
        guard_vars(n, vars.len())?;
        let _ = for_each_frame(n, class, |frame| {
            match frame.valid_on(a) {
                Ok(Verdict::Refuted(w)) => {
                    found = Some(Verdict::Refuted(w));
                    ControlFlow::Break(())
                }
                Ok(_) => ControlFlow::Continue(()),
                Err(_) => ControlFlow::Continue(()),
            }
        })?;
        if let Some(v) = found.take() {
            return Ok(v);
        }
    }
    Ok(Verdict::Unrefuted { bound: max_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::axiom;

    fn c2() -> IntFrame {
        let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
        IntFrame::normalize(leq, &[(0, 1)]).unwrap()
    }

    fn i1() -> IntFrame {
        IntFrame::normalize(Poset::discrete(1), &[]).unwrap()
    }

    fn r1() -> IntFrame {
        IntFrame::normalize(Poset::discrete(1), &[(0, 0)]).unwrap()
    }

    #[test]
    fn normalize_keeps_closed_relation() {
        let f = c2();
        assert_eq!(f.prec_row(0), 0b10);
        assert_eq!(f.prec_row(1), 0b00);
    }

    #[test]
    fn normalize_closes_under_composition() {
        let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
        let f = IntFrame::normalize(leq, &[(0, 0)]).unwrap();
        // 0 prec 0 forces 0 prec 1 through the order
        assert_eq!(f.prec_row(0), 0b11);
        assert_eq!(f.prec_row(1), 0b00);
    }

    #[test]
    fn normalize_empty_prec() {
        let leq = Poset::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let f = IntFrame::normalize(leq, &[]).unwrap();
        assert!((0..3).all(|w| f.prec_row(w) == 0));
    }

    #[test]
    fn forcing_box_clauses() {
        let v = Valuation::new();
        let boxbot = Formula::bx(Formula::Bot);
        assert!(i1().forces(&v, 0, &boxbot).unwrap());
        assert!(!r1().forces(&v, 0, &boxbot).unwrap());

        let mut v = Valuation::new();
        v.set("p", 0b10);
        let f = c2();
        assert!(f.forces(&v, 0, &Formula::bx(Formula::var("p"))).unwrap());
    }

    #[test]
    fn forcing_unbound_variable_errors() {
        let v = Valuation::new();
        assert_eq!(
            c2().forces(&v, 0, &Formula::var("p")).unwrap_err(),
            Error::UnboundVariable("p".to_string())
        );
    }

    #[test]
    fn validity_examples() {
        assert!(i1().valid_on(&axiom(AxiomName::Ver)).unwrap().holds());
        assert!(r1().valid_on(&axiom(AxiomName::Refl)).unwrap().holds());
        match c2().valid_on(&axiom(AxiomName::Cl)).unwrap() {
            Verdict::Refuted(w) => match *w {
                Witness::Kripke {
                    valuation, world, ..
                } => {
                    assert_eq!(valuation.get("A"), Some(0b00));
                    assert_eq!(valuation.get("B"), Some(0b10));
                    assert_eq!(world, 0);
                }
                other => panic!("unexpected witness {other:?}"),
            },
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn truth_sets_are_upsets() {
        // monotonicity on a couple of fixed frames; the property test over
        // random frames lives in the integration suite
        let f = c2();
        let mut v = Valuation::new();
        v.set("p", 0b10);
        for a in [
            Formula::var("p"),
            Formula::bx(Formula::var("p")),
            Formula::neg(Formula::var("p")),
            Formula::imp(Formula::bx(Formula::var("p")), Formula::var("p")),
        ] {
            let t = f.eval(&v, &a).unwrap();
            assert!(f.order().is_upset(t), "{a}");
        }
    }

    #[test]
    fn frame_conditions() {
        assert!(r1().frame_condition(AxiomName::Refl).unwrap());
        let km_c2 = {
            let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
            let prec = leq.strict_rows();
            IntFrame::from_rows(leq, prec).unwrap()
        };
        assert!(km_c2.frame_condition(AxiomName::R).unwrap());
        assert!(!c2().frame_condition(AxiomName::Cl).unwrap());
        assert_eq!(
            c2().frame_condition(AxiomName::Pll).unwrap_err(),
            Error::UnsupportedCondition("pll".to_string())
        );
    }

    #[test]
    fn noetherian_examples() {
        let km_c2 = {
            let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
            let prec = leq.strict_rows();
            IntFrame::from_rows(leq, prec).unwrap()
        };
        assert!(km_c2.is_noetherian());
        assert!(!r1().is_noetherian());
        // strict order of any finite poset is Noetherian
        for leq in enumerate_posets(3) {
            let f = IntFrame::from_rows(leq.clone(), leq.strict_rows()).unwrap();
            assert!(f.is_noetherian());
        }
    }

    #[test]
    fn frame_class_examples() {
        let km_c2 = {
            let leq = Poset::from_edges(2, &[(0, 1)]).unwrap();
            let prec = leq.strict_rows();
            IntFrame::from_rows(leq, prec).unwrap()
        };
        assert!(FrameClass::Km.contains(&km_c2));
        assert!(!FrameClass::Km.contains(&r1()));
        let fork = Poset::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let fork_frame = IntFrame::from_rows(fork.clone(), fork.strict_rows()).unwrap();
        assert!(FrameClass::Mhc.contains(&fork_frame));
        assert!(FrameClass::for_logic(LogicName::Plli).is_err());
    }

    #[test]
    fn enumerate_one_world() {
        let all = enumerate_frames(1, FrameClass::All).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].prec_row(0), 0b0);
        assert_eq!(all[1].prec_row(0), 0b1);
        let km = enumerate_frames(1, FrameClass::Km).unwrap();
        assert_eq!(km.len(), 1);
        assert_eq!(km[0].prec_row(0), 0b0);
    }

    #[test]
    fn enumerate_two_worlds_against_oracle() {
        // oracle: all 16 relations per labeled poset, kept when closed
        let mut expected = 0usize;
        for leq in enumerate_posets(2) {
            for bits in 0u32..16 {
                let prec: Vec<WorldMask> = vec![bits & 0b11, (bits >> 2) & 0b11];
                if IntFrame::from_rows(leq.clone(), prec).is_ok() {
                    expected += 1;
                }
            }
        }
        let got = enumerate_frames(2, FrameClass::All).unwrap().len();
        assert_eq!(got, expected);
    }

    #[test]
    fn enumeration_is_ascending_per_poset() {
        let frames = enumerate_frames(2, FrameClass::All).unwrap();
        let key = |f: &IntFrame| -> (Vec<WorldMask>, u64) {
            let n = f.len();
            let mut bits = 0u64;
            for w in 0..n {
                for x in 0..n {
                    if f.prec(w, x) {
                        bits |= 1 << (w * n + x);
                    }
                }
            }
            ((0..n).map(|w| f.order().up(w)).collect(), bits)
        };
        for pair in frames.windows(2) {
            let (p1, b1) = key(&pair[0]);
            let (p2, b2) = key(&pair[1]);
            if p1 == p2 {
                assert!(b1 < b2);
            }
        }
    }

    #[test]
    fn countermodel_examples() {
        // A -> box A refuted on the discrete 2-world frame with 0 prec 1
        let a = Formula::imp(Formula::var("A"), Formula::bx(Formula::var("A")));
        match countermodel(&a, FrameClass::All, 2).unwrap() {
            Verdict::Refuted(w) => match *w {
                Witness::Kripke {
                    frame,
                    valuation,
                    world,
                } => {
                    assert_eq!(frame.order(), &Poset::discrete(2));
                    assert_eq!(frame.prec_row(0), 0b10);
                    assert_eq!(frame.prec_row(1), 0b00);
                    assert_eq!(valuation.get("A"), Some(0b01));
                    assert_eq!(world, 0);
                }
                other => panic!("unexpected witness {other:?}"),
            },
            other => panic!("expected refutation, got {other:?}"),
        }

        // soundness: the weak Löb scheme has no GL countermodel
        assert_eq!(
            countermodel(&axiom(AxiomName::Wlob), FrameClass::Gl, 4).unwrap(),
            Verdict::Unrefuted { bound: 4 }
        );

        // linearity fails on the fork, at the root, with the expected witness
        match countermodel(&axiom(AxiomName::Gd), FrameClass::Km, 3).unwrap() {
            Verdict::Refuted(w) => match *w {
                Witness::Kripke {
                    frame,
                    valuation,
                    world,
                } => {
                    let fork = Poset::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
                    assert_eq!(frame.order(), &fork);
                    assert_eq!(valuation.get("A"), Some(0b010));
                    assert_eq!(valuation.get("B"), Some(0b100));
                    assert_eq!(world, 0);
                }
                other => panic!("unexpected witness {other:?}"),
            },
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn frame_file_round_trip() {
        let f = c2();
        let text = f.to_file_format();
        assert_eq!(IntFrame::parse(&text).unwrap(), f);
        let parsed = IntFrame::parse("worlds 2\nleq 0 1\nprec 0 0 # closes up\n").unwrap();
        assert_eq!(parsed.prec_row(0), 0b11);
    }
}
