//! Finite posets over worlds `0..n`, stored as per-world up-set bitmasks.

use crate::error::{Error, Result};

/// Set of worlds as a bitmask.
pub type WorldMask = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `up[w]` = worlds `z` with `w <= z`, including `w`.
    up: Vec<WorldMask>,
}

impl Poset {
    /// Builds a poset from `<=` pairs; the reflexive-transitive closure of the
    /// given edges is taken, then antisymmetry is checked.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Poset> {
        if n > 32 {
            return Err(Error::ResourceLimit(format!("poset of {n} points")));
        }
        let mut up: Vec<WorldMask> = (0..n).map(|w| 1 << w).collect();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::NotPoset(format!("edge ({a},{b}) out of range")));
            }
            up[a] |= 1 << b;
        }
        // transitive closure
        loop {
            let mut changed = false;
            for w in 0..n {
                let mut acc = up[w];
                let mut rest = up[w];
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    acc |= up[v];
                }
                if acc != up[w] {
                    up[w] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let p = Poset { n, up };
        p.check_antisymmetry()?;
        Ok(p)
    }

    /// Wraps pre-closed up-set rows; validates all poset laws.
    pub fn from_up_rows(up: Vec<WorldMask>) -> Result<Poset> {
        let n = up.len();
        if n > 32 {
            return Err(Error::ResourceLimit(format!("poset of {n} points")));
        }
        let p = Poset { n, up };
        for w in 0..n {
            if !p.le(w, w) {
                return Err(Error::NotPoset(format!("{w} not reflexive")));
            }
            if p.up[w] >> n != 0 {
                return Err(Error::NotPoset(format!("row {w} out of range")));
            }
            let mut rest = p.up[w];
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if p.up[v] & !p.up[w] != 0 {
                    return Err(Error::NotPoset(format!("{w} <= {v} not transitive")));
                }
            }
        }
        p.check_antisymmetry()?;
        Ok(p)
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for w in 0..self.n {
            for v in 0..self.n {
                if w != v && self.le(w, v) && self.le(v, w) {
                    return Err(Error::NotPoset(format!("{w} and {v} form a cycle")));
                }
            }
        }
        Ok(())
    }

    pub fn discrete(n: usize) -> Poset {
        Poset {
            n,
            up: (0..n).map(|w| 1 << w).collect(),
        }
    }

    /// The chain `0 <= 1 <= ... <= n-1`.
    pub fn chain(n: usize) -> Poset {
        Poset {
            n,
            up: (0..n).map(|w| (full_mask(n)) & !((1u32 << w) - 1)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up[a] & (1 << b) != 0
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    /// Up-set of `w` including `w`.
    pub fn up(&self, w: usize) -> WorldMask {
        self.up[w]
    }

    /// Strict up-set of `w`.
    pub fn strict_up(&self, w: usize) -> WorldMask {
        self.up[w] & !(1 << w)
    }

    pub fn full(&self) -> WorldMask {
        full_mask(self.n)
    }

    /// True iff `set` is upward closed.
    pub fn is_upset(&self, set: WorldMask) -> bool {
        let mut rest = set;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.up[w] & !set != 0 {
                return false;
            }
        }
        true
    }

    /// All upward closed sets in ascending bitmask order.
    pub fn upsets(&self) -> Vec<WorldMask> {
        let full = self.full();
        let mut out = Vec::new();
        let mut set: WorldMask = 0;
        loop {
            if self.is_upset(set) {
                out.push(set);
            }
            if set == full {
                break;
            }
            set += 1;
        }
        out
    }

    /// The strict order as a relation mask list (`prec[w]` = strict up-set).
    pub fn strict_rows(&self) -> Vec<WorldMask> {
        (0..self.n).map(|w| self.strict_up(w)).collect()
    }

    /// True iff the order is total.
    pub fn is_chain(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                if !self.le(a, b) && !self.le(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Worlds sorted so that each world precedes its strict upper bounds;
    /// ties broken by index.
    pub fn topo_order(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.n).collect();
        // more elements above means earlier in <=
        out.sort_by_key(|&w| (std::cmp::Reverse(self.up[w].count_ones()), w));
        out
    }

    /// Parses the poset file format: `points N`, then `le a b` lines;
    /// reflexive-transitive closure is applied, `#` comments ignored.
    pub fn parse(text: &str) -> Result<Poset> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(k) => &raw[..k],
                None => raw,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.is_empty() {
                continue;
            }
            let bad = |message: &str| Error::BadFile {
                line: i + 1,
                message: message.to_string(),
            };
            match words[0] {
                "points" => {
                    if words.len() != 2 {
                        return Err(bad("expected `points N`"));
                    }
                    n = Some(words[1].parse().map_err(|_| bad("bad point count"))?);
                }
                "le" => {
                    if words.len() != 3 {
                        return Err(bad("expected `le a b`"));
                    }
                    let a = words[1].parse().map_err(|_| bad("bad index"))?;
                    let b = words[2].parse().map_err(|_| bad("bad index"))?;
                    edges.push((a, b));
                }
                w => return Err(bad(&format!("unknown directive `{w}`"))),
            }
        }
        let n = n.ok_or(Error::BadFile {
            line: 0,
            message: "missing `points N`".to_string(),
        })?;
        Poset::from_edges(n, &edges)
    }
}

pub fn full_mask(n: usize) -> WorldMask {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Enumerates all labeled posets on `n` points in a fixed deterministic
/// order: each unordered pair `(i,j)`, `i < j`, is assigned `incomparable`,
/// `i <= j` or `j <= i`; assignments are counted in base 3 with pair `(0,1)`
/// least significant, and non-transitive assignments are dropped.
pub fn enumerate_posets(n: usize) -> Vec<Poset> {
    assert!(n <= 6, "poset enumeration is capped at 6 points");
    if n == 0 {
        return vec![Poset::discrete(0)];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    'outer: for counter in 0..total {
        let mut up: Vec<WorldMask> = (0..n).map(|w| 1 << w).collect();
        let mut c = counter;
        for &(i, j) in &pairs {
            match c % 3 {
                0 => {}
                1 => up[i] |= 1 << j,
                _ => up[j] |= 1 << i,
            }
            c /= 3;
        }
        // transitivity check; reflexivity and antisymmetry hold by construction
        for w in 0..n {
            let mut rest = up[w];
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if up[v] & !up[w] != 0 {
                    continue 'outer;
                }
            }
        }
        out.push(Poset { n, up });
    }
    out
}
