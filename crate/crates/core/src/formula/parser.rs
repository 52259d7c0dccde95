//! Recursive-descent parser.
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "D" "{" agent ("," agent)* "}" unary
//!          | "[" name "." name "]" unary | "(" formula ")"
//!          | ident "@" ident | "true" | "false"
//! ```
//!
//! Positions in errors are character offsets into the input.

use super::{ActionRef, Formula, Group};
use crate::complex::AgentId;
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        src: text.chars().collect(),
        pos: 0,
    };
    let f = p.imp()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser {
    src: Vec<char>,
    pos: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl Parser {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.src.len() >= self.pos + n && self.src[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{s}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(&c) if ident_start(c) => {}
            _ => return Err(self.error("expected identifier")),
        }
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&c| ident_char(c)) {
            self.pos += 1;
        }
        Ok(self.src[start..self.pos].iter().collect())
    }

    /// Component of an action reference; composed names contain `;`.
    fn action_name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|&c| ident_char(c) || c == ';')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected action name"));
        }
        Ok(self.src[start..self.pos].iter().collect())
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat("->") {
            let rhs = self.imp()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat("|") {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('~') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let f = self.imp()?;
                self.expect(")")?;
                Ok(f)
            }
            Some('[') => {
                self.pos += 1;
                let model = self.action_name()?;
                self.expect(".")?;
                let simplex = self.action_name()?;
                self.expect("]")?;
                let body = self.unary()?;
                Ok(Formula::action(ActionRef::new(model, simplex), body))
            }
            Some(c) if ident_start(c) => {
                let start = self.pos;
                let name = self.ident()?;
                if self.eat("@") {
                    let owner = self.ident()?;
                    return Ok(Formula::prop(&name, &owner));
                }
                match name.as_str() {
                    "D" if self.peek() == Some('{') => {
                        self.pos += 1;
                        let group = self.group(start)?;
                        let body = self.unary()?;
                        Ok(Formula::commit(group, body))
                    }
                    "true" => Ok(Formula::top()),
                    "false" => Ok(Formula::bottom()),
                    _ => {
                        self.pos = start;
                        Err(self.error("expected `@` after proposition name"))
                    }
                }
            }
            Some(_) => Err(self.error("expected a formula")),
        }
    }

    /// After `D{`; `start` is the position of the `D`.
    fn group(&mut self, start: usize) -> Result<Group> {
        let mut group = Group::new();
        if self.eat("}") {
            return Err(Error::EmptyGroup(start));
        }
        loop {
            group.insert(AgentId::new(self.ident()?));
            if self.eat("}") {
                return Ok(group);
            }
            self.expect(",")?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(b: &str, a: &str) -> Formula {
        Formula::prop(b, a)
    }

    #[test]
    fn joint_commitment_of_three() {
        let f = parse("D{a,b,c}(p@a & p@b & ~p@c)").unwrap();
        let expect = Formula::commit_to(
            ["a", "b", "c"],
            Formula::and(Formula::and(p("p", "a"), p("p", "b")), Formula::not(p("p", "c"))),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn implication_expands() {
        let f = parse("p@a -> p@a").unwrap();
        assert_eq!(f, Formula::not(Formula::and(p("p", "a"), Formula::not(p("p", "a")))));
    }

    #[test]
    fn action_box_with_primed_simplex() {
        let f = parse("[U.X'] D{a,b,c}(p@a & p@b & p@c)").unwrap();
        match f.node() {
            super::super::Node::Action(a, _) => assert_eq!(a, &ActionRef::new("U", "X'")),
            _ => panic!("not an action box"),
        }
        let g = parse("[U;V.x;y] p@a").unwrap();
        assert_eq!(g.actions().into_iter().next().unwrap().model, "U;V");
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("~p@a & q@b | r@c -> s@d").unwrap(),
            Formula::implies(
                Formula::or(Formula::and(Formula::not(p("p", "a")), p("q", "b")), p("r", "c")),
                p("s", "d")
            )
        );
        assert_eq!(
            parse("a@a -> b@b -> c@c").unwrap(),
            Formula::implies(p("a", "a"), Formula::implies(p("b", "b"), p("c", "c")))
        );
        assert_eq!(
            parse("D{b,a,a} p@a & q@b").unwrap(),
            Formula::and(Formula::commit_to(["a", "b"], p("p", "a")), p("q", "b"))
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("D{} p@a"), Err(Error::EmptyGroup(0))));
        assert!(matches!(parse("p@a &"), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse("p"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("(p@a"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse("p@a q@b"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("[U] p@a"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn keywords() {
        assert!(parse("true").unwrap().is_top());
        assert!(parse("false").unwrap().is_bottom());
        assert_eq!(parse("true@a").unwrap(), p("true", "a"));
        assert_eq!(parse("D@a").unwrap(), p("D", "a"));
    }
}
