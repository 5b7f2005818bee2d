//! Finite Heyting algebras, the point-free coderivative, density, operator
//! classification and guarded-polynomial fixed points.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::{Poset, WorldMask};
use crate::syntax::{Formula, ModalityTag};

/// Finite Heyting algebra with cached meet/join/implication tables.
/// Every finite Heyting algebra arises as the up-set algebra of some finite
/// poset, so [`from_poset`] is the canonical constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytingAlgebra {
    m: usize,
    le: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    bot: usize,
    top: usize,
    /// Display names of the elements.
    labels: Vec<String>,
}

/// Unary total operation on the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator(pub Vec<usize>);

impl Operator {
    pub fn apply(&self, h: usize) -> usize {
        self.0[h]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Classification flags for a unary operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OperatorFlags {
    /// Preserves top and binary meets.
    pub operator: bool,
    /// `op h <= op op h`.
    pub k4: bool,
    /// `op (op h -> h) <= op h`.
    pub gl: bool,
    /// `h <= op h`.
    pub r: bool,
    /// `r` together with `op h <= j | (j -> h)` for all `j`.
    pub mhc: bool,
    /// `mhc` together with `((op h -> h) -> h) = top` for all `h`.
    pub km: bool,
}

/// The up-set algebra of a finite poset: meets and joins are intersection
/// and union, implication is the relative pseudo-complement of up-sets.
/// Elements are indexed by ascending bitmask.
pub fn from_poset(poset: &Poset) -> Result<HeytingAlgebra> {
    let upsets = poset.upsets();
    let m = upsets.len();
    if m > 64 {
        return Err(Error::ResourceLimit(format!("{m}-element algebra")));
    }
    let index: BTreeMap<WorldMask, usize> =
        upsets.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let n = poset.len();
    let mut le = vec![false; m * m];
    let mut meet = vec![0usize; m * m];
    let mut join = vec![0usize; m * m];
    let mut imp = vec![0usize; m * m];
    for (i, &a) in upsets.iter().enumerate() {
        for (j, &b) in upsets.iter().enumerate() {
            le[i * m + j] = a & !b == 0;
            meet[i * m + j] = index[&(a & b)];
            join[i * m + j] = index[&(a | b)];
            let mut rel: WorldMask = 0;
            for w in 0..n {
                if poset.up(w) & a & !b == 0 {
                    rel |= 1 << w;
                }
            }
            imp[i * m + j] = index[&(rel & poset.full())];
        }
    }
    let labels = upsets
        .iter()
        .map(|&u| {
            let worlds: Vec<String> = (0..n)
                .filter(|w| u & (1 << w) != 0)
                .map(|w| w.to_string())
                .collect();
            format!("{{{}}}", worlds.join(","))
        })
        .collect();
    let ha = HeytingAlgebra {
        m,
        le,
        meet,
        join,
        imp,
        bot: index[&0],
        top: index[&poset.full()],
        labels,
    };
    ha.check_laws()?;
    Ok(ha)
}

impl HeytingAlgebra {
    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, h: usize) -> &str {
        &self.labels[h]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.m + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.m + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.m + b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.m + b]
    }

    /// Lattice, residuation and distributivity sanity checks.
    fn check_laws(&self) -> Result<()> {
        let m = self.m;
        for a in 0..m {
            for b in 0..m {
                let g = self.meet(a, b);
                if !self.le(g, a) || !self.le(g, b) {
                    return Err(Error::NotPoset("meet below arguments".to_string()));
                }
                // the implication is the largest j with j & a <= b
                let i = self.imp(a, b);
                if !self.le(self.meet(i, a), b) {
                    return Err(Error::NotPoset("implication not residual".to_string()));
                }
                for j in 0..m {
                    if self.le(self.meet(j, a), b) && !self.le(j, i) {
                        return Err(Error::NotPoset("implication not largest".to_string()));
                    }
                }
                for c in 0..m {
                    if self.meet(a, self.join(b, c))
                        != self.join(self.meet(a, b), self.meet(a, c))
                    {
                        return Err(Error::NotPoset("not distributive".to_string()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Point-free coderivative: the meet over all `i` of `i | (i -> h)`.
    pub fn coderivative(&self) -> Operator {
        let table = (0..self.m)
            .map(|h| {
                let mut acc = self.top;
                for i in 0..self.m {
                    acc = self.meet(acc, self.join(i, self.imp(i, h)));
                }
                acc
            })
            .collect();
        Operator(table)
    }

    /// Density of `h` in the interval `[i, top]`: `h & j = i` forces `j = i`.
    /// Also reports the join-form characterization
    /// (`exists j. h = j | (j -> i)`); the two agree on Heyting algebras.
    pub fn is_dense(&self, h: usize, i: usize) -> Result<DensityCheck> {
        if !self.le(i, h) {
            return Err(Error::DensityPrecondition(format!(
                "{} <= {}",
                self.label(i),
                self.label(h)
            )));
        }
        let dense = (0..self.m).all(|j| self.meet(h, j) != i || j == i);
        let join_form = (0..self.m).any(|j| self.join(j, self.imp(j, i)) == h);
        Ok(DensityCheck { dense, join_form })
    }

    /// The meet of all `i`-dense elements above `i`; an independent route to
    /// the coderivative.
    pub fn coderivative_via_density(&self, i: usize) -> usize {
        let mut acc = self.top;
        for h in 0..self.m {
            if self.le(i, h) && self.is_dense(h, i).expect("i <= h").dense {
                acc = self.meet(acc, h);
            }
        }
        acc
    }

    /// Evaluates the classification flags by exhaustive quantification over
    /// the carrier.
    pub fn classify_operator(&self, op: &Operator) -> OperatorFlags {
        let m = self.m;
        let operator = op.apply(self.top) == self.top
            && (0..m).all(|h| {
                (0..m).all(|j| op.apply(self.meet(h, j)) == self.meet(op.apply(h), op.apply(j)))
            });
        let k4 = (0..m).all(|h| self.le(op.apply(h), op.apply(op.apply(h))));
        let gl = (0..m).all(|h| self.le(op.apply(self.imp(op.apply(h), h)), op.apply(h)));
        let r = (0..m).all(|h| self.le(h, op.apply(h)));
        let mhc = r
            && (0..m).all(|h| {
                (0..m).all(|j| self.le(op.apply(h), self.join(j, self.imp(j, h))))
            });
        let km = mhc
            && (0..m).all(|h| {
                self.imp(self.imp(op.apply(h), h), h) == self.top
            });
        OperatorFlags {
            operator,
            k4,
            gl,
            r,
            mhc,
            km,
        }
    }

    /// Evaluates a polynomial at `p = x`; the box is interpreted by `op`,
    /// every other variable must name a carrier element through `constants`.
    pub fn eval_poly(
        &self,
        op: &Operator,
        t: &Formula,
        p: &str,
        x: usize,
        constants: &BTreeMap<String, usize>,
    ) -> Result<usize> {
        Ok(match t {
            Formula::Bot => self.bot,
            Formula::Var(name) => {
                if name == p {
                    x
                } else {
                    *constants
                        .get(name)
                        .ok_or_else(|| Error::UnresolvedConstant(name.clone()))?
                }
            }
            Formula::And(a, b) => self.meet(
                self.eval_poly(op, a, p, x, constants)?,
                self.eval_poly(op, b, p, x, constants)?,
            ),
            Formula::Or(a, b) => self.join(
                self.eval_poly(op, a, p, x, constants)?,
                self.eval_poly(op, b, p, x, constants)?,
            ),
            Formula::Impl(a, b) => self.imp(
                self.eval_poly(op, a, p, x, constants)?,
                self.eval_poly(op, b, p, x, constants)?,
            ),
            Formula::Box(ModalityTag::Plain, a) => {
                op.apply(self.eval_poly(op, a, p, x, constants)?)
            }
            Formula::Box(_, _) => return Err(Error::MixedTags),
        })
    }

    /// All fixed points of the polynomial in `p`, by exhaustive scan.
    pub fn poly_fixpoints(
        &self,
        op: &Operator,
        t: &Formula,
        p: &str,
        constants: &BTreeMap<String, usize>,
    ) -> Result<Vec<usize>> {
        (0..self.m)
            .filter_map(|x| match self.eval_poly(op, t, p, x, constants) {
                Ok(v) if v == x => Some(Ok(x)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            })
            .collect()
    }

    /// Scatteredness: the coderivative is not merely an mHC-operator but a
    /// KM-operator.
    pub fn scattered(&self) -> bool {
        self.classify_operator(&self.coderivative()).km
    }

    /// Enumerates all top- and meet-preserving unary tables; intended for
    /// small carriers.
    pub fn enumerate_operators(&self) -> Result<Vec<Operator>> {
        let m = self.m;
        if m > 5 {
            return Err(Error::ResourceLimit(format!(
                "operator enumeration on a {m}-element carrier"
            )));
        }
        let mut out = Vec::new();
        let total = (m as u64).pow(m as u32);
        'next: for code in 0..total {
            let mut table = Vec::with_capacity(m);
            let mut c = code;
            for _ in 0..m {
                table.push((c % m as u64) as usize);
                c /= m as u64;
            }
            let op = Operator(table);
            if op.apply(self.top) != self.top {
                continue;
            }
            for h in 0..m {
                for j in 0..m {
                    if op.apply(self.meet(h, j)) != self.meet(op.apply(h), op.apply(j)) {
                        continue 'next;
                    }
                }
            }
            out.push(op);
        }
        Ok(out)
    }
}

/// Result of the density check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityCheck {
    pub dense: bool,
    pub join_form: bool,
}

/// The coderivative computed set-theoretically on the up-set algebra:
/// a world satisfies the coderivative of `A` when its strict up-set is
/// contained in `A`.
pub fn cb_coderivative(poset: &Poset) -> Result<(HeytingAlgebra, Operator)> {
    let ha = from_poset(poset)?;
    let upsets = poset.upsets();
    let index: BTreeMap<WorldMask, usize> =
        upsets.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let table = upsets
        .iter()
        .map(|&a| {
            let mut out: WorldMask = 0;
            for w in 0..poset.len() {
                if poset.strict_up(w) & !a == 0 {
                    out |= 1 << w;
                }
            }
            index[&(out & poset.full())]
        })
        .collect();
    Ok((ha, Operator(table)))
}

/// A deterministic sample of box-guarded polynomial shapes in `p` with up to
/// two constant slots `c1`, `c2` (box depth at most two).
pub fn guarded_poly_shapes() -> Vec<Formula> {
    let p = || Formula::var("p");
    let c1 = || Formula::var("c1");
    let c2 = || Formula::var("c2");
    let bx = Formula::bx;
    vec![
        bx(p()),
        Formula::imp(bx(p()), Formula::Bot),
        Formula::imp(bx(p()), c1()),
        Formula::and(bx(p()), c1()),
        Formula::or(bx(p()), c1()),
        Formula::imp(c1(), bx(p())),
        bx(Formula::and(p(), c1())),
        bx(Formula::imp(p(), c1())),
        bx(bx(p())),
        Formula::imp(bx(p()), Formula::imp(c1(), c2())),
        Formula::and(Formula::imp(bx(p()), c1()), Formula::or(bx(p()), c2())),
        Formula::imp(bx(Formula::or(p(), c1())), c2()),
        Formula::or(bx(Formula::imp(p(), Formula::Bot)), c1()),
        Formula::imp(Formula::imp(bx(p()), c1()), c2()),
        Formula::and(bx(p()), bx(Formula::imp(p(), c2()))),
    ]
}
