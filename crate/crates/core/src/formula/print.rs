use std::fmt::{self, Write};

use super::{Formula, Node};

/// Canonical concrete syntax. Binary connectives are always parenthesized and
/// the derived forms (`true`, `false`, `|`, `->`) are recovered from their
/// expansions, so parsing the output yields the same tree.
pub(super) fn write(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if f.is_top() {
        return out.write_str("true");
    }
    if f.is_bottom() {
        return out.write_str("false");
    }
    match f.node() {
        Node::Atom(p) => write!(out, "{p}"),
        Node::Not(g) => {
            if let Node::And(l, r) = g.node() {
                if let (Node::Not(l), Node::Not(r)) = (l.node(), r.node()) {
                    return binary(out, l, "|", r);
                }
                if let Node::Not(r) = r.node() {
                    return binary(out, l, "->", r);
                }
            }
            out.write_char('~')?;
            write(g, out)
        }
        Node::And(l, r) => binary(out, l, "&", r),
        Node::Commit(group, body) => {
            out.write_str("D{")?;
            for (i, a) in group.iter().enumerate() {
                if i > 0 {
                    out.write_char(',')?;
                }
                out.write_str(a.as_str())?;
            }
            out.write_str("} ")?;
            write(body, out)
        }
        Node::Action(a, body) => {
            write!(out, "[{a}] ")?;
            write(body, out)
        }
    }
}

fn binary(out: &mut fmt::Formatter<'_>, l: &Formula, op: &str, r: &Formula) -> fmt::Result {
    out.write_char('(')?;
    write(l, out)?;
    write!(out, " {op} ")?;
    write(r, out)?;
    out.write_char(')')
}
