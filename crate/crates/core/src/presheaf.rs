//! Finite set-valued presheaves on finite posets: the truth-value object,
//! Kripke-Joyal forcing for an internal-formula fragment with the "later"
//! modality, non-expansive/contractive endomorphism analysis, fixed-point
//! subobjects, and the shift functor with its iterative fixed points on
//! truncated chains.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{Poset, WorldMask};

const MAX_STAGE_SIZE: usize = 32;
const MAX_SUBFUNCTOR_BITS: usize = 20;

/// Covariant finite functor: a finite set per point and an action map for
/// every related pair, functorial by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    poset: Poset,
    sizes: Vec<usize>,
    labels: Vec<Vec<String>>,
    act: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Presheaf {
    /// Builds a presheaf from stage sizes and action maps. Identity maps are
    /// implicit; missing maps for comparable pairs are filled by composition
    /// when a path of given maps exists. Functoriality is validated.
    pub fn new(
        poset: Poset,
        sizes: Vec<usize>,
        maps: &[((usize, usize), Vec<usize>)],
    ) -> Result<Presheaf> {
        let n = poset.len();
        if sizes.len() != n {
            return Err(Error::TypeError(format!(
                "{} sizes for {n} points",
                sizes.len()
            )));
        }
        if sizes.iter().any(|&s| s > MAX_STAGE_SIZE) {
            return Err(Error::ResourceLimit(format!(
                "stage sets are capped at {MAX_STAGE_SIZE} elements"
            )));
        }
        let labels = sizes
            .iter()
            .map(|&s| (0..s).map(|i| i.to_string()).collect())
            .collect();
        Presheaf::with_labels(poset, sizes, labels, maps)
    }

    pub fn with_labels(
        poset: Poset,
        sizes: Vec<usize>,
        labels: Vec<Vec<String>>,
        maps: &[((usize, usize), Vec<usize>)],
    ) -> Result<Presheaf> {
        let n = poset.len();
        let mut act: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for w in 0..n {
            act.insert((w, w), (0..sizes[w]).collect());
        }
        for ((w, z), map) in maps {
            let (w, z) = (*w, *z);
            if w >= n || z >= n || !poset.le(w, z) {
                return Err(Error::TypeError(format!("map {w}->{z} without {w} <= {z}")));
            }
            if map.len() != sizes[w] || map.iter().any(|&e| e >= sizes[z]) {
                return Err(Error::TypeError(format!("map {w}->{z} has wrong shape")));
            }
            act.insert((w, z), map.clone());
        }
        // maps into singleton stages and out of empty stages are forced
        for w in 0..n {
            for z in 0..n {
                if poset.lt(w, z)
                    && !act.contains_key(&(w, z))
                    && (sizes[z] == 1 || sizes[w] == 0)
                {
                    act.insert((w, z), vec![0; sizes[w]]);
                }
            }
        }
        // fill missing comparable pairs by composition along any path
        loop {
            let mut added = false;
            for w in 0..n {
                for z in 0..n {
                    if !poset.lt(w, z) || act.contains_key(&(w, z)) {
                        continue;
                    }
                    for v in 0..n {
                        if v != w && v != z && poset.le(w, v) && poset.le(v, z) {
                            if let (Some(f), Some(g)) = (act.get(&(w, v)), act.get(&(v, z))) {
                                let comp: Vec<usize> = f.iter().map(|&e| g[e]).collect();
                                act.insert((w, z), comp);
                                added = true;
                                break;
                            }
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        let p = Presheaf {
            poset,
            sizes,
            labels,
            act,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let n = self.poset.len();
        for w in 0..n {
            for z in 0..n {
                if self.poset.le(w, z) && !self.act.contains_key(&(w, z)) {
                    return Err(Error::Functoriality(format!("missing map {w}->{z}")));
                }
            }
        }
        for w in 0..n {
            for z in 0..n {
                if !self.poset.le(w, z) {
                    continue;
                }
                for u in 0..n {
                    if !self.poset.le(z, u) {
                        continue;
                    }
                    let f = &self.act[&(w, z)];
                    let g = &self.act[&(z, u)];
                    let h = &self.act[&(w, u)];
                    for e in 0..self.sizes[w] {
                        if g[f[e]] != h[e] {
                            return Err(Error::Functoriality(format!(
                                "composite {w}->{z}->{u} disagrees at element {e}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Terminal presheaf: a single element everywhere.
    pub fn terminal(poset: Poset) -> Presheaf {
        let n = poset.len();
        Presheaf::new(poset, vec![1; n], &[]).expect("terminal presheaf")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn size(&self, w: usize) -> usize {
        self.sizes[w]
    }

    pub fn label(&self, w: usize, e: usize) -> &str {
        &self.labels[w][e]
    }

    pub fn apply(&self, w: usize, z: usize, e: usize) -> usize {
        self.act[&(w, z)][e]
    }
}

/// Natural family of maps between presheaves on the same poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn new(x: &Presheaf, y: &Presheaf, components: Vec<Vec<usize>>) -> Result<NatTrans> {
        let n = x.poset.len();
        if y.poset != x.poset || components.len() != n {
            return Err(Error::TypeError("component family has wrong shape".into()));
        }
        for w in 0..n {
            if components[w].len() != x.sizes[w]
                || components[w].iter().any(|&e| e >= y.sizes[w])
            {
                return Err(Error::TypeError(format!("component at {w} has wrong shape")));
            }
        }
        for w in 0..n {
            for z in 0..n {
                if !x.poset.le(w, z) {
                    continue;
                }
                for e in 0..x.sizes[w] {
                    if components[z][x.apply(w, z, e)] != y.apply(w, z, components[w][e]) {
                        return Err(Error::Naturality(format!(
                            "square {w}->{z} fails at element {e}"
                        )));
                    }
                }
            }
        }
        Ok(NatTrans { components })
    }

    pub fn apply(&self, w: usize, e: usize) -> usize {
        self.components[w][e]
    }
}

/// Stagewise subset closed under the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject {
    pub object: String,
    pub stages: Vec<WorldMask>,
}

impl Subobject {
    pub fn new(object: &str, x: &Presheaf, stages: Vec<WorldMask>) -> Result<Subobject> {
        let s = Subobject {
            object: object.to_string(),
            stages,
        };
        s.validate(x, x.poset.full())?;
        Ok(s)
    }

    /// Closure under the action on the stages inside `within`.
    pub fn validate(&self, x: &Presheaf, within: WorldMask) -> Result<()> {
        let n = x.poset.len();
        if self.stages.len() != n {
            return Err(Error::TypeError("stage family has wrong shape".into()));
        }
        for w in 0..n {
            if within & (1 << w) == 0 {
                continue;
            }
            for z in 0..n {
                if within & (1 << z) == 0 || !x.poset.le(w, z) {
                    continue;
                }
                for e in 0..x.sizes[w] {
                    if self.stages[w] & (1 << e) != 0
                        && self.stages[z] & (1 << x.apply(w, z, e)) == 0
                    {
                        return Err(Error::TypeError(format!(
                            "subobject not closed under {w}->{z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, w: usize, e: usize) -> bool {
        self.stages[w] & (1 << e) != 0
    }
}

/// The truth-value presheaf: at each point, the up-sets of that point's
/// up-set, acting by intersection. `elements[w]` lists the up-set masks in
/// ascending order, parallel to the element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaPresheaf {
    pub presheaf: Presheaf,
    pub elements: Vec<Vec<WorldMask>>,
}

pub fn omega(poset: &Poset) -> OmegaPresheaf {
    let n = poset.len();
    let elements: Vec<Vec<WorldMask>> = (0..n).map(|w| upsets_above(poset, w)).collect();
    let sizes: Vec<usize> = elements.iter().map(|e| e.len()).collect();
    let mut maps = Vec::new();
    for w in 0..n {
        for z in 0..n {
            if !poset.lt(w, z) {
                continue;
            }
            let map: Vec<usize> = elements[w]
                .iter()
                .map(|&a| {
                    let restricted = a & poset.up(z);
                    elements[z]
                        .iter()
                        .position(|&b| b == restricted)
                        .expect("restriction is an up-set above z")
                })
                .collect();
            maps.push(((w, z), map));
        }
    }
    let labels = elements
        .iter()
        .map(|els| {
            els.iter()
                .map(|&mask| {
                    let worlds: Vec<String> = (0..n)
                        .filter(|v| mask & (1 << v) != 0)
                        .map(|v| v.to_string())
                        .collect();
                    format!("{{{}}}", worlds.join(","))
                })
                .collect()
        })
        .collect();
    let presheaf = Presheaf::with_labels(poset.clone(), sizes, labels, &maps)
        .expect("truth-value presheaf is functorial");
    OmegaPresheaf { presheaf, elements }
}

/// Up-sets contained in the up-set of `w`, ascending.
fn upsets_above(poset: &Poset, w: usize) -> Vec<WorldMask> {
    let dom = poset.up(w);
    let mut out = Vec::new();
    let mut sub: WorldMask = 0;
    loop {
        if poset.is_upset(sub) {
            out.push(sub);
        }
        if sub == dom {
            break;
        }
        // next subset of dom
        sub = (sub.wrapping_sub(dom)) & dom;
    }
    out
}

/// Terms of the internal language: variables and applications of named
/// natural transformations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    App(String, Box<Term>),
}

impl Term {
    pub fn var(s: &str) -> Term {
        Term::Var(s.to_string())
    }

    pub fn app(f: &str, t: Term) -> Term {
        Term::App(f.to_string(), Box::new(t))
    }
}

/// Reference to a subobject: either bound by a subobject quantifier or a
/// literal constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubRef {
    Var(String),
    Const(Subobject),
}

/// Sort of a quantified variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sort {
    Object(String),
    Omega,
}

/// Internal-formula fragment interpreted by Kripke-Joyal forcing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InternalFormula {
    Const(bool),
    /// Truth constant given by an up-set of the base poset (a subobject of
    /// the terminal object): forced exactly at its worlds.
    UpsetAtom(WorldMask),
    /// A truth-value variable read as a proposition: forced when its value
    /// is the top up-set of the current stage.
    OmegaVar(String),
    Eq(Term, Term),
    Member(Term, SubRef),
    And(Box<InternalFormula>, Box<InternalFormula>),
    Or(Box<InternalFormula>, Box<InternalFormula>),
    Impl(Box<InternalFormula>, Box<InternalFormula>),
    /// Forced when the body is forced at every strictly later stage.
    Later(Box<InternalFormula>),
    Forall(String, Sort, Box<InternalFormula>),
    Exists(String, Sort, Box<InternalFormula>),
    /// Quantifies over subfunctors of the named object (restricted to the
    /// current stage's up-set).
    ForallSub(String, String, Box<InternalFormula>),
}

impl InternalFormula {
    pub fn and(a: InternalFormula, b: InternalFormula) -> InternalFormula {
        InternalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: InternalFormula, b: InternalFormula) -> InternalFormula {
        InternalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: InternalFormula, b: InternalFormula) -> InternalFormula {
        InternalFormula::Impl(Box::new(a), Box::new(b))
    }

    pub fn later(a: InternalFormula) -> InternalFormula {
        InternalFormula::Later(Box::new(a))
    }

    pub fn forall(x: &str, sort: Sort, body: InternalFormula) -> InternalFormula {
        InternalFormula::Forall(x.to_string(), sort, Box::new(body))
    }

    pub fn exists(x: &str, sort: Sort, body: InternalFormula) -> InternalFormula {
        InternalFormula::Exists(x.to_string(), sort, Box::new(body))
    }

    pub fn forall_sub(p: &str, object: &str, body: InternalFormula) -> InternalFormula {
        InternalFormula::ForallSub(p.to_string(), object.to_string(), Box::new(body))
    }
}

/// Declared objects and natural transformations available to terms.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub objects: BTreeMap<String, Presheaf>,
    /// name -> (source object, target object, family)
    pub nats: BTreeMap<String, (String, String, NatTrans)>,
}

impl Context {
    pub fn with_object(name: &str, x: &Presheaf) -> Context {
        let mut ctx = Context::default();
        ctx.objects.insert(name.to_string(), x.clone());
        ctx
    }

    pub fn add_nat(&mut self, name: &str, from: &str, to: &str, f: &NatTrans) {
        self.nats
            .insert(name.to_string(), (from.to_string(), to.to_string(), f.clone()));
    }

    fn object(&self, name: &str) -> Result<&Presheaf> {
        self.objects
            .get(name)
            .ok_or_else(|| Error::TypeError(format!("unknown object `{name}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    El { object: String, idx: usize },
    Om(WorldMask),
    Sub(Subobject),
}

/// Typed assignment at a stage.
#[derive(Debug, Clone, Default)]
pub struct Env(BTreeMap<String, Value>);

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn bind_element(&mut self, var: &str, object: &str, idx: usize) {
        self.0.insert(
            var.to_string(),
            Value::El {
                object: object.to_string(),
                idx,
            },
        );
    }

    pub fn bind_omega(&mut self, var: &str, mask: WorldMask) {
        self.0.insert(var.to_string(), Value::Om(mask));
    }

    pub fn bind_sub(&mut self, var: &str, s: Subobject) {
        self.0.insert(var.to_string(), Value::Sub(s));
    }

    fn transport(&self, ctx: &Context, poset: &Poset, w: usize, z: usize) -> Result<Env> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.0 {
            let moved = match v {
                Value::El { object, idx } => Value::El {
                    object: object.clone(),
                    idx: ctx.object(object)?.apply(w, z, *idx),
                },
                Value::Om(mask) => Value::Om(mask & poset.up(z)),
                Value::Sub(s) => Value::Sub(s.clone()),
            };
            out.insert(k.clone(), moved);
        }
        Ok(Env(out))
    }
}

fn eval_term(ctx: &Context, env: &Env, w: usize, t: &Term) -> Result<(String, usize)> {
    match t {
        Term::Var(x) => match env.0.get(x) {
            Some(Value::El { object, idx }) => Ok((object.clone(), *idx)),
            Some(_) => Err(Error::TypeError(format!("`{x}` is not an element variable"))),
            None => Err(Error::UnboundVariable(x.clone())),
        },
        Term::App(f, s) => {
            let (from, to, nat) = ctx
                .nats
                .get(f)
                .ok_or_else(|| Error::TypeError(format!("unknown map `{f}`")))?;
            let (obj, idx) = eval_term(ctx, env, w, s)?;
            if &obj != from {
                return Err(Error::TypeError(format!(
                    "`{f}` expects `{from}`, got `{obj}`"
                )));
            }
            Ok((to.clone(), nat.apply(w, idx)))
        }
    }
}

/// Kripke-Joyal forcing at a stage. Implication and the universal
/// quantifiers range over all later stages with the environment transported
/// along the action; the existential quantifier picks an element at the
/// current stage; the later modality ranges over strictly later stages.
pub fn force(
    ctx: &Context,
    poset: &Poset,
    w: usize,
    env: &Env,
    phi: &InternalFormula,
) -> Result<bool> {
    Ok(match phi {
        InternalFormula::Const(b) => *b,
        InternalFormula::UpsetAtom(u) => {
            debug_assert!(poset.is_upset(*u), "atom must be an up-set");
            u & (1 << w) != 0
        }
        InternalFormula::OmegaVar(x) => match env.0.get(x) {
            Some(Value::Om(mask)) => *mask == poset.up(w),
            Some(_) => {
                return Err(Error::TypeError(format!(
                    "`{x}` is not a truth-value variable"
                )))
            }
            None => return Err(Error::UnboundVariable(x.clone())),
        },
        InternalFormula::Eq(t1, t2) => {
            let (o1, i1) = eval_term(ctx, env, w, t1)?;
            let (o2, i2) = eval_term(ctx, env, w, t2)?;
            if o1 != o2 {
                return Err(Error::TypeError(format!(
                    "equality between `{o1}` and `{o2}`"
                )));
            }
            i1 == i2
        }
        InternalFormula::Member(t, sref) => {
            let (obj, idx) = eval_term(ctx, env, w, t)?;
            let sub = match sref {
                SubRef::Const(s) => s,
                SubRef::Var(x) => match env.0.get(x) {
                    Some(Value::Sub(s)) => s,
                    Some(_) => {
                        return Err(Error::TypeError(format!(
                            "`{x}` is not a subobject variable"
                        )))
                    }
                    None => return Err(Error::UnboundVariable(x.clone())),
                },
            };
            if sub.object != obj {
                return Err(Error::TypeError(format!(
                    "membership of `{obj}` in a subobject of `{}`",
                    sub.object
                )));
            }
            sub.contains(w, idx)
        }
        InternalFormula::And(a, b) => {
            force(ctx, poset, w, env, a)? && force(ctx, poset, w, env, b)?
        }
        InternalFormula::Or(a, b) => {
            force(ctx, poset, w, env, a)? || force(ctx, poset, w, env, b)?
        }
        InternalFormula::Impl(a, b) => {
            for z in 0..poset.len() {
                if !poset.le(w, z) {
                    continue;
                }
                let env = env.transport(ctx, poset, w, z)?;
                if force(ctx, poset, z, &env, a)? && !force(ctx, poset, z, &env, b)? {
                    return Ok(false);
                }
            }
            true
        }
        InternalFormula::Later(a) => {
            for z in 0..poset.len() {
                if !poset.lt(w, z) {
                    continue;
                }
                let env = env.transport(ctx, poset, w, z)?;
                if !force(ctx, poset, z, &env, a)? {
                    return Ok(false);
                }
            }
            true
        }
        InternalFormula::Forall(x, sort, body) => {
            for z in 0..poset.len() {
                if !poset.le(w, z) {
                    continue;
                }
                let base = env.transport(ctx, poset, w, z)?;
                match sort {
                    Sort::Object(name) => {
                        let size = ctx.object(name)?.size(z);
                        for d in 0..size {
                            let mut env = base.clone();
                            env.bind_element(x, name, d);
                            if !force(ctx, poset, z, &env, body)? {
                                return Ok(false);
                            }
                        }
                    }
                    Sort::Omega => {
                        for mask in upsets_above(poset, z) {
                            let mut env = base.clone();
                            env.bind_omega(x, mask);
                            if !force(ctx, poset, z, &env, body)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
            true
        }
        InternalFormula::Exists(x, sort, body) => match sort {
            Sort::Object(name) => {
                let size = ctx.object(name)?.size(w);
                for d in 0..size {
                    let mut env = env.clone();
                    env.bind_element(x, name, d);
                    if force(ctx, poset, w, &env, body)? {
                        return Ok(true);
                    }
                }
                false
            }
            Sort::Omega => {
                for mask in upsets_above(poset, w) {
                    let mut env = env.clone();
                    env.bind_omega(x, mask);
                    if force(ctx, poset, w, &env, body)? {
                        return Ok(true);
                    }
                }
                false
            }
        },
        InternalFormula::ForallSub(p, object, body) => {
            for z in 0..poset.len() {
                if !poset.le(w, z) {
                    continue;
                }
                let base = env.transport(ctx, poset, w, z)?;
                let x = ctx.object(object)?;
                for s in subfunctors_above(x, z)? {
                    let mut env = base.clone();
                    env.bind_sub(
                        p,
                        Subobject {
                            object: object.clone(),
                            stages: s,
                        },
                    );
                    if !force(ctx, poset, z, &env, body)? {
                        return Ok(false);
                    }
                }
            }
            true
        }
    })
}

/// Enumerates subfunctors of `x` restricted to the up-set of `z`, stages
/// outside the domain left empty; deterministic order.
fn subfunctors_above(x: &Presheaf, z: usize) -> Result<Vec<Vec<WorldMask>>> {
    let poset = x.poset();
    let dom = poset.up(z);
    let bits: usize = (0..poset.len())
        .filter(|&w| dom & (1 << w) != 0)
        .map(|w| x.size(w))
        .sum();
    if bits > MAX_SUBFUNCTOR_BITS {
        return Err(Error::ResourceLimit(format!(
            "subfunctor enumeration over {bits} element bits"
        )));
    }
    // decide stages top-down so closure constraints look only at decided ones
    let order: Vec<usize> = {
        let mut o = poset.topo_order();
        o.retain(|&w| dom & (1 << w) != 0);
        o.reverse(); // maximal stages first
        o
    };
    let mut out = Vec::new();
    let mut stages = vec![0 as WorldMask; poset.len()];
    fn rec(
        x: &Presheaf,
        order: &[usize],
        k: usize,
        stages: &mut Vec<WorldMask>,
        out: &mut Vec<Vec<WorldMask>>,
    ) {
        if k == order.len() {
            out.push(stages.clone());
            return;
        }
        let w = order[k];
        let size = x.size(w);
        'sets: for set in 0..(1u32 << size) {
            // closure into already-decided (strictly later) stages
            for j in 0..k {
                let z = order[j];
                if !x.poset().le(w, z) {
                    continue;
                }
                for e in 0..size {
                    if set & (1 << e) != 0 && stages[z] & (1 << x.apply(w, z, e)) == 0 {
                        continue 'sets;
                    }
                }
            }
            stages[w] = set;
            rec(x, order, k + 1, stages, out);
            stages[w] = 0;
        }
    }
    rec(x, &order, 0, &mut stages, &mut out);
    Ok(out)
}

/// Strong-Löb law for the later modality: `((later p -> p) -> p)` forced at
/// every stage for every up-set instance. True on every finite poset.
pub fn check_strong_lob(poset: &Poset) -> Result<bool> {
    let ctx = Context::default();
    let env = Env::new();
    for u in poset.upsets() {
        let atom = InternalFormula::UpsetAtom(u);
        let phi = InternalFormula::imp(
            InternalFormula::imp(InternalFormula::later(atom.clone()), atom.clone()),
            atom,
        );
        for w in 0..poset.len() {
            if !force(&ctx, poset, w, &env, &phi)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The later modality expressed inside the language:
/// `forall t: Omega. t | (t ~> phi)`.
pub fn later_via_internal_def(
    ctx: &Context,
    poset: &Poset,
    w: usize,
    env: &Env,
    phi: &InternalFormula,
) -> Result<bool> {
    let t = "later_t";
    let body = InternalFormula::or(
        InternalFormula::OmegaVar(t.to_string()),
        InternalFormula::imp(InternalFormula::OmegaVar(t.to_string()), phi.clone()),
    );
    force(ctx, poset, w, env, &InternalFormula::forall(t, Sort::Omega, body))
}

/// Fixed points of an endomorphism, with the global-element report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixReport {
    pub sub: Subobject,
    /// Present when every stage holds exactly one fixed point and the family
    /// is compatible with the action.
    pub global: Option<Vec<usize>>,
}

/// The subobject `{x | f x = x}`; closed under the action by naturality.
pub fn fix_subobject(x: &Presheaf, f: &NatTrans) -> Result<FixReport> {
    let n = x.poset().len();
    let stages: Vec<WorldMask> = (0..n)
        .map(|w| {
            let mut m: WorldMask = 0;
            for e in 0..x.size(w) {
                if f.apply(w, e) == e {
                    m |= 1 << e;
                }
            }
            m
        })
        .collect();
    let sub = Subobject::new("X", x, stages.clone())?;
    let mut global = Vec::with_capacity(n);
    let mut is_global = true;
    for stage in &stages {
        if stage.count_ones() == 1 {
            global.push(stage.trailing_zeros() as usize);
        } else {
            is_global = false;
            break;
        }
    }
    if is_global {
        for w in 0..n {
            for z in 0..n {
                if x.poset().le(w, z) && x.apply(w, z, global[w]) != global[z] {
                    is_global = false;
                }
            }
        }
    }
    Ok(FixReport {
        sub,
        global: if is_global { Some(global) } else { None },
    })
}

fn endo_context(x: &Presheaf, f: &NatTrans) -> Context {
    let mut ctx = Context::with_object("X", x);
    ctx.add_nat("f", "X", "X", f);
    ctx
}

fn eq(t1: Term, t2: Term) -> InternalFormula {
    InternalFormula::Eq(t1, t2)
}

/// `forall x,y. ((f x = f y ~> x = y) ~> x = y)` forced at every stage.
pub fn check_non_expansive(x: &Presheaf, f: &NatTrans) -> Result<bool> {
    let ctx = endo_context(x, f);
    let sx = Sort::Object("X".to_string());
    let fx = |v: &str| Term::app("f", Term::var(v));
    let body = InternalFormula::imp(
        InternalFormula::imp(eq(fx("a"), fx("b")), eq(Term::var("a"), Term::var("b"))),
        eq(Term::var("a"), Term::var("b")),
    );
    let phi = InternalFormula::forall("a", sx.clone(), InternalFormula::forall("b", sx, body));
    force_everywhere(&ctx, x.poset(), &phi)
}

/// `forall x,y. (later (x = y) ~> f x = f y)` forced at every stage.
pub fn check_contractive(x: &Presheaf, f: &NatTrans) -> Result<bool> {
    let ctx = endo_context(x, f);
    let sx = Sort::Object("X".to_string());
    let fx = |v: &str| Term::app("f", Term::var(v));
    let body = InternalFormula::imp(
        InternalFormula::later(eq(Term::var("a"), Term::var("b"))),
        eq(fx("a"), fx("b")),
    );
    let phi = InternalFormula::forall("a", sx.clone(), InternalFormula::forall("b", sx, body));
    force_everywhere(&ctx, x.poset(), &phi)
}

fn force_everywhere(ctx: &Context, poset: &Poset, phi: &InternalFormula) -> Result<bool> {
    let env = Env::new();
    for w in 0..poset.len() {
        if !force(ctx, poset, w, &env, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subte_of(sref: SubRef) -> InternalFormula {
    let sx = Sort::Object("X".to_string());
    let body = InternalFormula::imp(
        InternalFormula::and(
            InternalFormula::Member(Term::var("a"), sref.clone()),
            InternalFormula::Member(Term::var("b"), sref),
        ),
        eq(Term::var("a"), Term::var("b")),
    );
    InternalFormula::forall("a", sx.clone(), InternalFormula::forall("b", sx, body))
}

fn contained_in(p: SubRef, q: SubRef) -> InternalFormula {
    InternalFormula::forall(
        "c",
        Sort::Object("X".to_string()),
        InternalFormula::imp(
            InternalFormula::Member(Term::var("c"), p),
            InternalFormula::Member(Term::var("c"), q),
        ),
    )
}

/// Report of the subterminality/maximality check for the fixed-point
/// subobject of an endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxstReport {
    /// The fixed points are internally "at most one".
    pub subte: bool,
    /// Every subterminal subobject containing the fixed points is contained
    /// in them (quantified over enumerated subfunctors).
    pub maxst: bool,
    /// A stage and subfunctor violating maximality, when present.
    pub witness: Option<(usize, Subobject)>,
}

pub fn check_maxst(x: &Presheaf, f: &NatTrans) -> Result<MaxstReport> {
    let ctx = endo_context(x, f);
    let fixed = fix_subobject(x, f)?.sub;
    let subte = force_everywhere(&ctx, x.poset(), &subte_of(SubRef::Const(fixed.clone())))?;
    let alpha = || SubRef::Var("alpha".to_string());
    let maximality = InternalFormula::forall_sub(
        "alpha",
        "X",
        InternalFormula::imp(
            InternalFormula::and(
                subte_of(alpha()),
                contained_in(SubRef::Const(fixed.clone()), alpha()),
            ),
            contained_in(alpha(), SubRef::Const(fixed.clone())),
        ),
    );
    let maxst = subte && force_everywhere(&ctx, x.poset(), &maximality)?;
    let witness = if maxst {
        None
    } else {
        find_maxst_witness(&ctx, x, &fixed)?
    };
    Ok(MaxstReport {
        subte,
        maxst,
        witness,
    })
}

fn find_maxst_witness(
    ctx: &Context,
    x: &Presheaf,
    fixed: &Subobject,
) -> Result<Option<(usize, Subobject)>> {
    let poset = x.poset();
    let env = Env::new();
    for z in 0..poset.len() {
        for stages in subfunctors_above(x, z)? {
            let alpha = Subobject {
                object: "X".to_string(),
                stages,
            };
            let mut env_a = env.clone();
            env_a.bind_sub("alpha", alpha.clone());
            let premise = InternalFormula::and(
                subte_of(SubRef::Var("alpha".to_string())),
                contained_in(
                    SubRef::Const(fixed.clone()),
                    SubRef::Var("alpha".to_string()),
                ),
            );
            let conclusion = contained_in(
                SubRef::Var("alpha".to_string()),
                SubRef::Const(fixed.clone()),
            );
            if force(ctx, poset, z, &env_a, &premise)?
                && !force(ctx, poset, z, &env_a, &conclusion)?
            {
                return Ok(Some((z, alpha)));
            }
        }
    }
    Ok(None)
}

/// Stage numbering of a chain: stage 1 is the top of the order (no strictly
/// later stages), stage `n` the bottom. Returns worlds by descending order.
pub fn chain_stages(poset: &Poset) -> Result<Vec<usize>> {
    if !poset.is_chain() {
        return Err(Error::NotAChain);
    }
    let mut worlds: Vec<usize> = (0..poset.len()).collect();
    worlds.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if poset.lt(a, b) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Less
        }
    });
    Ok(worlds)
}

/// The shift functor on a chain: a single element at stage 1 and the
/// previous stage's set everywhere else, actions shifted accordingly.
pub fn later_functor(x: &Presheaf) -> Result<Presheaf> {
    let poset = x.poset().clone();
    let stages = chain_stages(&poset)?; // stages[k] = world of stage k+1
    let n = poset.len();
    let mut sizes = vec![0usize; n];
    let mut labels = vec![Vec::new(); n];
    for (k, &w) in stages.iter().enumerate() {
        if k == 0 {
            sizes[w] = 1;
            labels[w] = vec!["*".to_string()];
        } else {
            let prev = stages[k - 1];
            sizes[w] = x.size(prev);
            labels[w] = (0..x.size(prev))
                .map(|e| x.label(prev, e).to_string())
                .collect();
        }
    }
    let mut maps = Vec::new();
    for k in 1..n {
        let w = stages[k]; // stage k+1
        let z = stages[k - 1]; // stage k, directly above
        let map: Vec<usize> = if k == 1 {
            (0..sizes[w]).map(|_| 0).collect()
        } else {
            (0..sizes[w])
                .map(|e| x.apply(stages[k - 1], stages[k - 2], e))
                .collect()
        };
        maps.push(((w, z), map));
    }
    Presheaf::with_labels(poset, sizes, labels, &maps)
}

/// The unit of the shift functor: truncation of each stage into the shifted
/// one (the unique map at the top stage).
pub fn next_transform(x: &Presheaf) -> Result<NatTrans> {
    let shifted = later_functor(x)?;
    let poset = x.poset();
    let stages = chain_stages(poset)?;
    let n = poset.len();
    let mut components = vec![Vec::new(); n];
    for (k, &w) in stages.iter().enumerate() {
        components[w] = if k == 0 {
            (0..x.size(w)).map(|_| 0).collect()
        } else {
            (0..x.size(w)).map(|e| x.apply(w, stages[k - 1], e)).collect()
        };
    }
    NatTrans::new(x, &shifted, components)
}

/// Iterative fixed point of a later-contractive endomorphism on an inhabited
/// presheaf over a chain: at stage `k` the `k`-fold iterate from an arbitrary
/// start, checked independent of the start, compatible with the action,
/// fixed by `f`, and unique among global elements.
pub fn banach_fixpoint(x: &Presheaf, f: &NatTrans) -> Result<Vec<usize>> {
    let poset = x.poset();
    let stages = chain_stages(poset)?;
    if !check_contractive(x, f)? {
        return Err(Error::NotContractive);
    }
    for w in 0..poset.len() {
        if x.size(w) == 0 {
            return Err(Error::EmptyStage(w));
        }
    }
    let iterate = |w: usize, start: usize, count: usize| -> usize {
        let mut e = start;
        for _ in 0..count {
            e = f.apply(w, e);
        }
        e
    };
    let mut c = vec![0usize; poset.len()];
    for (k, &w) in stages.iter().enumerate() {
        let count = k + 1; // stage index
        let value = iterate(w, 0, count);
        for start in 1..x.size(w) {
            if iterate(w, start, count) != value {
                return Err(Error::NotContractive);
            }
        }
        c[w] = value;
    }
    // compatibility with the action
    for w in 0..poset.len() {
        for z in 0..poset.len() {
            if poset.le(w, z) && x.apply(w, z, c[w]) != c[z] {
                return Err(Error::NotContractive);
            }
        }
    }
    for w in 0..poset.len() {
        if f.apply(w, c[w]) != c[w] {
            return Err(Error::NotContractive);
        }
    }
    // uniqueness among global elements: each is determined by its value at
    // the bottom stage
    let bottom = *stages.last().expect("nonempty chain");
    let mut fixed_globals = Vec::new();
    for e0 in 0..x.size(bottom) {
        let elem: Vec<usize> = (0..poset.len())
            .map(|w| x.apply(bottom, w, e0))
            .collect();
        if (0..poset.len()).all(|w| f.apply(w, elem[w]) == elem[w]) {
            fixed_globals.push(elem);
        }
    }
    assert!(
        fixed_globals.len() == 1 && fixed_globals[0] == c,
        "contractive maps fix exactly one global element"
    );
    Ok(c)
}

/// Bit-stream presheaf on a chain of length `n`: stage `k` holds the bit
/// strings of length `k` (capped), restriction drops the last bit.
pub fn bitstream_presheaf(n: usize, cap: usize) -> Result<Presheaf> {
    let poset = Poset::chain(n);
    let stages = chain_stages(&poset)?;
    let mut sizes = vec![0usize; n];
    let mut labels = vec![Vec::new(); n];
    let width = |k: usize| (k + 1).min(cap);
    for (k, &w) in stages.iter().enumerate() {
        let len = width(k);
        sizes[w] = 1 << len;
        labels[w] = (0..1usize << len)
            .map(|v| (0..len).map(|b| if v >> b & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
    }
    let mut maps = Vec::new();
    for k in 1..n {
        let w = stages[k];
        let z = stages[k - 1];
        let (lw, lz) = (width(k), width(k - 1));
        // drop the most recent bits to reach the shorter prefix
        let map: Vec<usize> = (0..1usize << lw).map(|v| v & ((1 << lz) - 1)).collect();
        maps.push(((w, z), map));
    }
    Presheaf::with_labels(poset, sizes, labels, &maps)
}

/// The endomorphism prepending a fixed bit to each stream (dropping overflow
/// bits beyond the stage width).
pub fn prepend_bit(x: &Presheaf, bit: usize) -> Result<NatTrans> {
    let poset = x.poset();
    let stages = chain_stages(poset)?;
    let mut components = vec![Vec::new(); poset.len()];
    for &w in &stages {
        let len = x.size(w).trailing_zeros() as usize;
        components[w] = (0..x.size(w))
            .map(|v| ((v << 1) | bit) & ((1 << len) - 1))
            .collect();
    }
    NatTrans::new(x, x, components)
}

/// Parses the presheaf file format: a `poset <file>` reference resolved by
/// the supplied loader, `stage w: e1 e2 ...` lines, `map w z: e->e' ...`
/// lines, and optional `nat: w: e->e' ...` lines defining an endomorphism.
pub fn parse_presheaf_file<L>(
    text: &str,
    load_poset: L,
) -> Result<(Presheaf, Option<NatTrans>)>
where
    L: FnOnce(&str) -> Result<String>,
{
    let mut poset: Option<Poset> = None;
    let mut stage_lines: Vec<(usize, Vec<String>)> = Vec::new();
    let mut map_lines: Vec<(usize, usize, Vec<(String, String)>)> = Vec::new();
    let mut nat_lines: Vec<(usize, Vec<(String, String)>)> = Vec::new();
    let mut loader = Some(load_poset);
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::BadFile {
            line: i + 1,
            message,
        };
        if let Some(path) = line.strip_prefix("poset ") {
            let loader = loader
                .take()
                .ok_or_else(|| bad("duplicate `poset` line".into()))?;
            poset = Some(Poset::parse(&loader(path.trim())?)?);
        } else if let Some(rest) = line.strip_prefix("stage ") {
            let (head, elems) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected `stage w: ...`".into()))?;
            let w: usize = head.trim().parse().map_err(|_| bad("bad stage index".into()))?;
            let names: Vec<String> = elems.split_whitespace().map(str::to_string).collect();
            stage_lines.push((w, names));
        } else if let Some(rest) = line.strip_prefix("map ") {
            let (head, pairs) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected `map w z: ...`".into()))?;
            let idx: Vec<&str> = head.split_whitespace().collect();
            if idx.len() != 2 {
                return Err(bad("expected `map w z: ...`".into()));
            }
            let w = idx[0].parse().map_err(|_| bad("bad stage index".into()))?;
            let z = idx[1].parse().map_err(|_| bad("bad stage index".into()))?;
            map_lines.push((w, z, parse_arrows(pairs).map_err(|m| bad(m))?));
        } else if let Some(rest) = line.strip_prefix("nat:") {
            let (head, pairs) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected `nat: w: ...`".into()))?;
            let w: usize = head.trim().parse().map_err(|_| bad("bad stage index".into()))?;
            nat_lines.push((w, parse_arrows(pairs).map_err(|m| bad(m))?));
        } else {
            return Err(bad(format!("unknown directive `{line}`")));
        }
    }
    let poset = poset.ok_or(Error::BadFile {
        line: 0,
        message: "missing `poset <file>`".to_string(),
    })?;
    let n = poset.len();
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); n];
    for (w, names) in stage_lines {
        if w >= n {
            return Err(Error::BadFile {
                line: 0,
                message: format!("stage {w} out of range"),
            });
        }
        labels[w] = names;
    }
    let sizes: Vec<usize> = labels.iter().map(|l| l.len()).collect();
    let lookup = |w: usize, name: &str| -> Result<usize> {
        labels[w]
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::BadFile {
                line: 0,
                message: format!("unknown element `{name}` at stage {w}"),
            })
    };
    let mut maps = Vec::new();
    for (w, z, pairs) in map_lines {
        let mut table = vec![usize::MAX; sizes[w]];
        for (from, to) in pairs {
            table[lookup(w, &from)?] = lookup(z, &to)?;
        }
        if table.iter().any(|&e| e == usize::MAX) {
            return Err(Error::BadFile {
                line: 0,
                message: format!("map {w}->{z} leaves elements unmapped"),
            });
        }
        maps.push(((w, z), table));
    }
    let presheaf = Presheaf::with_labels(poset, sizes, labels.clone(), &maps)?;
    let nat = if nat_lines.is_empty() {
        None
    } else {
        let mut components: Vec<Vec<usize>> =
            (0..n).map(|w| (0..presheaf.size(w)).collect()).collect();
        for (w, pairs) in nat_lines {
            let mut table = vec![usize::MAX; presheaf.size(w)];
            for (from, to) in pairs {
                table[lookup(w, &from)?] = lookup(w, &to)?;
            }
            if table.iter().any(|&e| e == usize::MAX) {
                return Err(Error::BadFile {
                    line: 0,
                    message: format!("nat component at {w} leaves elements unmapped"),
                });
            }
            components[w] = table;
        }
        Some(NatTrans::new(&presheaf, &presheaf, components)?)
    };
    Ok((presheaf, nat))
}

fn parse_arrows(text: &str) -> std::result::Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        let (a, b) = chunk
            .split_once("->")
            .ok_or_else(|| format!("expected `e->e'`, got `{chunk}`"))?;
        out.push((a.to_string(), b.to_string()));
    }
    Ok(out)
}

impl fmt::Display for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in 0..self.poset.len() {
            writeln!(
                f,
                "stage {w}: {}",
                (0..self.size(w))
                    .map(|e| self.label(w, e).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_point(size: usize) -> Presheaf {
        Presheaf::new(Poset::discrete(1), vec![size], &[]).unwrap()
    }

    fn endo(x: &Presheaf, table: Vec<usize>) -> NatTrans {
        NatTrans::new(x, x, vec![table]).unwrap()
    }

    #[test]
    fn functoriality_is_checked() {
        let chain = Poset::chain(3);
        // inconsistent composite: 0->1 then 1->2 disagrees with given 0->2
        let bad = Presheaf::new(
            chain,
            vec![1, 1, 2],
            &[
                ((0, 1), vec![0]),
                ((1, 2), vec![0]),
                ((0, 2), vec![1]),
            ],
        );
        assert!(matches!(bad.unwrap_err(), Error::Functoriality(_)));
    }

    #[test]
    fn naturality_is_checked() {
        let chain = Poset::chain(2);
        let x = Presheaf::new(chain, vec![2, 2], &[((0, 1), vec![0, 1])]).unwrap();
        // swap at stage 0, identity at stage 1: not natural
        let bad = NatTrans::new(&x, &x, vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(bad.unwrap_err(), Error::Naturality(_)));
    }

    #[test]
    fn omega_sizes() {
        let one = omega(&Poset::discrete(1));
        assert_eq!(one.elements[0], vec![0b0, 0b1]);

        let c2 = omega(&Poset::from_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(c2.presheaf.size(0), 3);
        assert_eq!(c2.presheaf.size(1), 2);

        let c3 = omega(&Poset::chain(3));
        assert_eq!(
            (0..3).map(|w| c3.presheaf.size(w)).collect::<Vec<_>>(),
            vec![4, 3, 2]
        );
    }

    #[test]
    fn later_trivial_at_top_stage() {
        let chain = Poset::chain(3);
        let ctx = Context::default();
        let env = Env::new();
        let falsum = InternalFormula::Const(false);
        // world 2 is the top of the chain: no strictly later stage
        assert!(force(&ctx, &chain, 2, &env, &InternalFormula::later(falsum.clone())).unwrap());
        assert!(!force(&ctx, &chain, 0, &env, &InternalFormula::later(falsum)).unwrap());
    }

    #[test]
    fn later_on_eq_of_distinct_constants() {
        // falsum expressed as an equation between distinct constants
        let chain = Poset::chain(3);
        let x = Presheaf::new(chain.clone(), vec![2, 2, 2], &[
            ((0, 1), vec![0, 1]),
            ((1, 2), vec![0, 1]),
        ])
        .unwrap();
        let ctx = Context::with_object("X", &x);
        let mut env = Env::new();
        env.bind_element("a", "X", 0);
        env.bind_element("b", "X", 1);
        let neq = InternalFormula::later(eq(Term::var("a"), Term::var("b")));
        assert!(force(&ctx, &chain, 2, &env, &neq).unwrap());
        assert!(!force(&ctx, &chain, 0, &env, &neq).unwrap());
    }

    #[test]
    fn strong_lob_on_small_posets() {
        for poset in [
            Poset::discrete(1),
            Poset::from_edges(2, &[(0, 1)]).unwrap(),
            Poset::from_edges(3, &[(0, 1), (0, 2)]).unwrap(),
        ] {
            assert!(check_strong_lob(&poset).unwrap());
        }
    }

    #[test]
    fn fix_subobject_reports() {
        let x = one_point(3);
        // constant to element 2
        let f = endo(&x, vec![2, 2, 2]);
        let rep = fix_subobject(&x, &f).unwrap();
        assert_eq!(rep.sub.stages, vec![0b100]);
        assert_eq!(rep.global, Some(vec![2]));

        let id = endo(&x, vec![0, 1, 2]);
        let rep = fix_subobject(&x, &id).unwrap();
        assert_eq!(rep.sub.stages, vec![0b111]);
        assert_eq!(rep.global, None);

        let x2 = one_point(2);
        let swap = endo(&x2, vec![1, 0]);
        let rep = fix_subobject(&x2, &swap).unwrap();
        assert_eq!(rep.sub.stages, vec![0b00]);
        assert_eq!(rep.global, None);
    }

    #[test]
    fn non_expansive_examples() {
        let x = one_point(2);
        assert!(check_non_expansive(&x, &endo(&x, vec![0, 0])).unwrap());
        assert!(!check_non_expansive(&x, &endo(&x, vec![0, 1])).unwrap());
        assert!(!check_non_expansive(&x, &endo(&x, vec![1, 0])).unwrap());
    }

    #[test]
    fn maxst_examples() {
        let x = one_point(3);
        let constant = endo(&x, vec![2, 2, 2]);
        let rep = check_maxst(&x, &constant).unwrap();
        assert!(rep.subte && rep.maxst);

        let x2 = one_point(2);
        let swap = endo(&x2, vec![1, 0]);
        let rep = check_maxst(&x2, &swap).unwrap();
        assert!(rep.subte);
        assert!(!rep.maxst);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn contractive_examples() {
        let streams = bitstream_presheaf(3, 8).unwrap();
        let prepend1 = prepend_bit(&streams, 1).unwrap();
        assert!(check_contractive(&streams, &prepend1).unwrap());
        let id_components: Vec<Vec<usize>> = (0..3)
            .map(|w| (0..streams.size(w)).collect())
            .collect();
        let id = NatTrans::new(&streams, &streams, id_components).unwrap();
        assert!(!check_contractive(&streams, &id).unwrap());

        let x = one_point(2);
        assert!(!check_contractive(&x, &endo(&x, vec![1, 0])).unwrap());
        assert!(check_contractive(&x, &endo(&x, vec![0, 0])).unwrap());
    }

    #[test]
    fn contractive_implies_non_expansive_on_streams() {
        let streams = bitstream_presheaf(3, 8).unwrap();
        let prepend1 = prepend_bit(&streams, 1).unwrap();
        assert!(check_non_expansive(&streams, &prepend1).unwrap());
    }

    #[test]
    fn later_functor_shifts() {
        let terminal = Presheaf::terminal(Poset::chain(3));
        let shifted = later_functor(&terminal).unwrap();
        assert_eq!(shifted.sizes, terminal.sizes);
        assert_eq!(shifted.act, terminal.act);

        let streams = bitstream_presheaf(3, 8).unwrap();
        let shifted = later_functor(&streams).unwrap();
        // chain worlds: 0 (stage 3), 1 (stage 2), 2 (stage 1)
        assert_eq!(
            (0..3).map(|w| streams.size(w)).collect::<Vec<_>>(),
            vec![8, 4, 2]
        );
        assert_eq!(
            (0..3).map(|w| shifted.size(w)).collect::<Vec<_>>(),
            vec![4, 2, 1]
        );
        let next = next_transform(&streams).unwrap();
        // components are the truncations
        assert_eq!(next.components[0], (0..8).map(|v| v & 0b11).collect::<Vec<_>>());
        assert_eq!(next.components[2], vec![0, 0]);
    }

    #[test]
    fn banach_on_streams() {
        let streams = bitstream_presheaf(3, 8).unwrap();
        let prepend1 = prepend_bit(&streams, 1).unwrap();
        let c = banach_fixpoint(&streams, &prepend1).unwrap();
        // worlds 2,1,0 are stages 1,2,3; all-ones at each width
        assert_eq!(c[2], 0b1);
        assert_eq!(c[1], 0b11);
        assert_eq!(c[0], 0b111);

        let id_components: Vec<Vec<usize>> = (0..3)
            .map(|w| (0..streams.size(w)).collect())
            .collect();
        let id = NatTrans::new(&streams, &streams, id_components).unwrap();
        assert_eq!(banach_fixpoint(&streams, &id).unwrap_err(), Error::NotContractive);
    }

    #[test]
    fn banach_constant_map() {
        let streams = bitstream_presheaf(3, 8).unwrap();
        // constant to the zero stream at each stage: a global element
        let zero: Vec<Vec<usize>> = (0..3).map(|w| vec![0; streams.size(w)]).collect();
        let f = NatTrans::new(&streams, &streams, zero).unwrap();
        let c = banach_fixpoint(&streams, &f).unwrap();
        assert_eq!(c, vec![0, 0, 0]);
    }

    #[test]
    fn banach_rejects_empty_stage() {
        // empty bottom stage, singleton top stage
        let chain = Poset::chain(2);
        let x = Presheaf::new(chain, vec![0, 1], &[]).unwrap();
        let f = NatTrans::new(&x, &x, vec![vec![], vec![0]]).unwrap();
        assert!(matches!(
            banach_fixpoint(&x, &f).unwrap_err(),
            Error::EmptyStage(_)
        ));
    }

    #[test]
    fn later_functor_rejects_non_chain() {
        let fork = Poset::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let x = Presheaf::terminal(fork);
        assert_eq!(later_functor(&x).unwrap_err(), Error::NotAChain);
    }

    #[test]
    fn presheaf_file_round_trip() {
        let poset_text = "points 2\nle 0 1\n";
        let text = "poset base.poset\nstage 0: a b\nstage 1: c\nmap 0 1: a->c b->c\nnat: 0: a->b b->b\nnat: 1: c->c\n";
        let (p, nat) = parse_presheaf_file(text, |path| {
            assert_eq!(path, "base.poset");
            Ok(poset_text.to_string())
        })
        .unwrap();
        assert_eq!(p.size(0), 2);
        assert_eq!(p.size(1), 1);
        assert_eq!(p.apply(0, 1, 0), 0);
        let nat = nat.unwrap();
        assert_eq!(nat.components[0], vec![1, 1]);
    }
}
