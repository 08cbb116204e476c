use std::fmt;

use super::formula::Formula;

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn write_bin(a: &Formula, op: &str, b: &Formula, left: u8, right: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    write_at(a, left, out)?;
    write!(out, " {op} ")?;
    write_at(b, right, out)
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Bot => out.write_str("bot"),
        Formula::Top => out.write_str("top"),
        Formula::Var(x) => out.write_str(x),
        Formula::Neg(a) => {
            out.write_str("~")?;
            write_at(a, UNARY, out)
        }
        Formula::And(a, b) => write_bin(a, "&", b, AND, UNARY, out),
        Formula::Or(a, b) => write_bin(a, "|", b, OR, AND, out),
        Formula::Imp(a, b) => write_bin(a, "->", b, OR, IMP, out),
        Formula::Iff(a, b) => write_bin(a, "<->", b, IFF, IMP, out),
        Formula::Apply(name, args) => match args.as_slice() {
            [] => out.write_str(name),
            [a] if prec(a) == UNARY => {
                write!(out, "{name} ")?;
                write_formula(a, out)
            }
            _ => {
                write!(out, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.write_str(", ")?;
                    }
                    write_formula(a, out)?;
                }
                out.write_str(")")
            }
        },
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_formula;
    use super::super::Signature;
    use super::*;

    #[test]
    fn t_axiom_prints_bare() {
        let f = Formula::imp(Formula::apply("Box", vec![Formula::var("a")]), Formula::var("a"));
        assert_eq!(print_formula(&f), "Box a -> a");
        assert_eq!(print_formula(&Formula::Bot), "bot");
    }

    #[test]
    fn parenthesises_only_where_needed() {
        let sig = Signature::from_pairs([("Box", 1), ("O", 2)]).unwrap();
        for text in [
            "Box(a -> b) -> Box a -> Box b",
            "(a -> b) -> c",
            "a & (b & c)",
            "a | b & c",
            "(a | b) & c",
            "a <-> b <-> c",
            "a <-> (b <-> c)",
            "~(a & b)",
            "~~Box ~a",
            "O(a | b, c)",
            "Box Box a",
        ] {
            let f = parse_formula(text, &sig).unwrap();
            assert_eq!(print_formula(&f), text);
        }
    }
}
