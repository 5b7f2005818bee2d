//! Concrete text syntax and pretty-printer for formulas.
//!
//! Grammar (tightest first):
//!
//! ```text
//! atom   := "bot" | "top" | ident | "(" iff ")"
//! unary  := ("box" | "boxdot" | "[i]" | "[m]" | "~")* atom
//! conj   := unary ("&" unary)*            left-associative
//! disj   := conj ("|" conj)*              left-associative
//! impl   := disj ("->" impl)?             right-associative
//! iff    := impl ("<->" iff)?             right-associative
//! ident  := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! `top`, `~`, `<->` and `boxdot` are rewritten to the core grammar during
//! parsing. The same grammar is the contract for CLI formula arguments and
//! for corpus files (one formula per line, `#` starts a comment).

use crate::error::{Error, Result};
use crate::syntax::{Formula, ModalityTag};

pub fn parse(src: &str) -> Result<Formula> {
    let mut p = Parser::new(src);
    let f = p.iff()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    f.check_tags()?;
    Ok(f)
}

/// Parses a corpus: one formula per line, blank lines and `#` comments
/// ignored. Returns `(line_number, formula)` pairs (1-based lines).
pub fn parse_corpus(src: &str) -> Result<Vec<(usize, Formula)>> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let body = match line.find('#') {
            Some(k) => &line[..k],
            None => line,
        };
        if body.trim().is_empty() {
            continue;
        }
        let f = parse(body).map_err(|e| Error::BadFile {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push((i + 1, f));
    }
    Ok(out)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    /// Consumes `word` only when it is not a prefix of a longer identifier.
    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = &self.bytes[self.pos..];
        if rest.starts_with(word.as_bytes()) {
            let after = rest.get(word.len()).copied();
            let cont = matches!(after, Some(c) if c.is_ascii_alphanumeric() || c == b'_');
            if !cont {
                self.pos += word.len();
                return true;
            }
        }
        false
    }

    fn iff(&mut self) -> Result<Formula> {
        let lhs = self.implication()?;
        if self.eat("<->") {
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disj()?;
        // `->` must not swallow the arrow of `<->`; peek first.
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(b"->") {
            self.pos += 2;
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut acc = self.conj()?;
        loop {
            self.skip_ws();
            if self.bytes.get(self.pos) == Some(&b'|') {
                self.pos += 1;
                let rhs = self.conj()?;
                acc = Formula::or(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.bytes.get(self.pos) == Some(&b'&') {
                self.pos += 1;
                let rhs = self.unary()?;
                acc = Formula::and(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat_word("boxdot") {
            return Ok(Formula::boxdot(self.unary()?));
        }
        if self.eat_word("box") {
            return Ok(Formula::bx(self.unary()?));
        }
        if self.eat("[i]") {
            return Ok(Formula::boxed(ModalityTag::I, self.unary()?));
        }
        if self.eat("[m]") {
            return Ok(Formula::boxed(ModalityTag::M, self.unary()?));
        }
        if self.eat("~") {
            return Ok(Formula::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let f = self.iff()?;
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&b')') {
                    self.pos += 1;
                    Ok(f)
                } else {
                    Err(self.err("expected `)`"))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                if self.eat_word("bot") {
                    return Ok(Formula::Bot);
                }
                if self.eat_word("top") {
                    return Ok(Formula::top());
                }
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                Ok(Formula::var(name))
            }
            _ => Err(self.err("expected a formula")),
        }
    }
}

/// Binding strength used by the printer; larger binds tighter.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Bot | Formula::Var(_) => 4,
        Formula::Box(_, _) => 3,
        Formula::And(_, _) => 2,
        Formula::Or(_, _) => 1,
        Formula::Impl(_, _) => 0,
    }
}

fn is_top(f: &Formula) -> bool {
    matches!(f, Formula::Impl(a, b) if **a == Formula::Bot && **b == Formula::Bot)
}

/// Minimal-parenthesis text; `parse(render(a))` equals `a` structurally.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    go(f, 0, &mut out);
    out
}

fn go(f: &Formula, min: u8, out: &mut String) {
    if is_top(f) {
        out.push_str("top");
        return;
    }
    let p = prec(f);
    let parens = p < min;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Bot => out.push_str("bot"),
        Formula::Var(name) => out.push_str(name),
        Formula::Box(tag, a) => {
            match tag {
                ModalityTag::Plain => out.push_str("box "),
                ModalityTag::I => out.push_str("[i] "),
                ModalityTag::M => out.push_str("[m] "),
            }
            go(a, 3, out);
        }
        Formula::And(a, b) => {
            go(a, 2, out);
            out.push_str(" & ");
            go(b, 3, out);
        }
        Formula::Or(a, b) => {
            go(a, 1, out);
            out.push_str(" | ");
            go(b, 2, out);
        }
        Formula::Impl(a, b) => {
            go(a, 1, out);
            out.push_str(" -> ");
            go(b, 0, out);
        }
    }
    if parens {
        out.push(')');
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{axiom, AxiomName};

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }
    fn r() -> Formula {
        Formula::var("r")
    }

    #[test]
    fn parses_wlob_surface() {
        let f = parse("box (box A -> A) -> box A").unwrap();
        assert_eq!(f, axiom(AxiomName::Wlob));
    }

    #[test]
    fn parses_identity_impl() {
        assert_eq!(parse("p -> p").unwrap(), Formula::imp(p(), p()));
    }

    #[test]
    fn parses_bimodal_tags() {
        let f = parse("[i] p & [m] q").unwrap();
        let expect = Formula::and(
            Formula::boxed(ModalityTag::I, p()),
            Formula::boxed(ModalityTag::M, q()),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn rejects_mixed_tags() {
        assert_eq!(parse("[i] p & box q").unwrap_err(), Error::MixedTags);
    }

    #[test]
    fn syntax_error_has_offset() {
        match parse("p -> ").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 5),
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn derived_forms_normalize() {
        assert_eq!(parse("top").unwrap(), Formula::top());
        assert_eq!(parse("~p").unwrap(), Formula::neg(p()));
        assert_eq!(parse("boxdot p").unwrap(), Formula::boxdot(p()));
        assert_eq!(parse("p <-> q").unwrap(), Formula::iff(p(), q()));
    }

    #[test]
    fn precedence_and_associativity() {
        // & tighter than |, | tighter than ->, -> right-assoc
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(p(), Formula::and(q(), r()))
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::imp(p(), Formula::imp(q(), r()))
        );
        assert_eq!(
            parse("box p -> p").unwrap(),
            Formula::imp(Formula::bx(p()), p())
        );
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(Formula::and(p(), q()), r())
        );
    }

    #[test]
    fn renders_slob_with_forced_parens() {
        assert_eq!(render(&axiom(AxiomName::Slob)), "(box A -> A) -> A");
    }

    #[test]
    fn renders_bot_and_top() {
        assert_eq!(render(&Formula::Bot), "bot");
        assert_eq!(render(&Formula::top()), "top");
        assert_eq!(render(&Formula::bx(Formula::top())), "box top");
    }

    #[test]
    fn renders_minimal_parens() {
        assert_eq!(render(&Formula::or(p(), Formula::and(q(), r()))), "p | q & r");
        assert_eq!(render(&Formula::and(Formula::or(p(), q()), r())), "(p | q) & r");
    }

    #[test]
    fn corpus_lines_and_comments() {
        let src = "# heading\np -> p\n\nbox q # trailing\n";
        let fs = parse_corpus(src).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (2, Formula::imp(p(), p())));
        assert_eq!(fs[1], (4, Formula::bx(q())));
    }

    #[test]
    fn all_axiom_surfaces_parse_to_catalog() {
        for name in AxiomName::ALL {
            let f = parse(name.surface()).unwrap();
            assert_eq!(f, axiom(name), "surface form of {name}");
        }
    }

    #[test]
    fn round_trip_axioms() {
        for name in AxiomName::ALL {
            let f = axiom(name);
            assert_eq!(parse(&render(&f)).unwrap(), f, "{name}");
        }
    }

    mod random_round_trip {
        use super::*;
        use proptest::prelude::*;

        fn arb_formula(depth: u32) -> BoxedStrategy<Formula> {
            let leaf = prop_oneof![
                Just(Formula::Bot),
                proptest::sample::select(vec!["p", "q", "r", "s"]).prop_map(Formula::var),
            ];
            leaf.prop_recursive(depth, 64, 2, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Formula::imp(a, b)),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Formula::and(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                    inner.prop_map(Formula::bx),
                ]
            })
            .boxed()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn round_trip(f in arb_formula(8)) {
                let text = render(&f);
                prop_assert_eq!(parse(&text).unwrap(), f);
            }
        }
    }
}
