//! Line-oriented text format for straight-line programs.
//!
//! ```text
//! # x1^2 + 3
//! nvars 1
//! g0 = input x1
//! g1 = mul g0 g0
//! g2 = const 3
//! g3 = add g1 g2
//! output g3
//! ```
//!
//! Variables are 1-based in text. Gate ids must strictly increase but may
//! skip values; operands must refer to earlier gates. Without an `nvars`
//! header the variable count is the largest index used.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{Circuit, Gate, GateId};
use crate::algebra::PrimeField;
use crate::error::{Error, Result};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(tok: &str, prefix: char, line: usize) -> Result<u64> {
    tok.strip_prefix(prefix)
        .and_then(|r| r.parse::<u64>().ok())
        .ok_or_else(|| syntax(line, format!("expected `{prefix}<number>`, found `{tok}`")))
}

pub fn parse_circuit(text: &str, field: PrimeField) -> Result<Circuit> {
    let mut nvars_decl: Option<usize> = None;
    let mut max_var = 0usize;
    let mut gates: Vec<Gate> = Vec::new();
    let mut ids: HashMap<u64, GateId> = HashMap::new();
    let mut last_id: Option<u64> = None;
    let mut outputs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "nvars" => {
                if toks.len() != 2 {
                    return Err(syntax(line, "expected `nvars <n>`"));
                }
                if nvars_decl.is_some() || !gates.is_empty() {
                    return Err(syntax(line, "`nvars` must appear once, before any gate"));
                }
                let n = toks[1]
                    .parse::<usize>()
                    .map_err(|_| syntax(line, format!("bad variable count `{}`", toks[1])))?;
                nvars_decl = Some(n);
            }
            "output" => {
                if toks.len() != 2 {
                    return Err(syntax(line, "expected `output g<i>`"));
                }
                let id = parse_id(toks[1], 'g', line)?;
                let &gid = ids
                    .get(&id)
                    .ok_or_else(|| syntax(line, format!("output refers to undefined gate g{id}")))?;
                outputs.push(gid);
            }
            t if t.starts_with('g') => {
                let id = parse_id(t, 'g', line)?;
                if toks.len() < 3 || toks[1] != "=" {
                    return Err(syntax(line, "expected `g<i> = <op> ...`"));
                }
                if last_id.is_some_and(|l| id <= l) {
                    return Err(syntax(line, format!("gate id g{id} is not increasing")));
                }
                let operand = |tok: &str| -> Result<GateId> {
                    let a = parse_id(tok, 'g', line)?;
                    ids.get(&a)
                        .copied()
                        .ok_or_else(|| syntax(line, format!("forward or unknown reference g{a}")))
                };
                let gate = match (toks[2], toks.len()) {
                    ("input", 4) => {
                        let v = parse_id(toks[3], 'x', line)? as usize;
                        if v == 0 || nvars_decl.is_some_and(|n| v > n) {
                            return Err(syntax(line, format!("unknown variable x{v}")));
                        }
                        max_var = max_var.max(v);
                        Gate::Input(v - 1)
                    }
                    ("const", 4) => {
                        let v = toks[3].parse::<u64>().map_err(|_| {
                            syntax(line, format!("bad constant `{}`", toks[3]))
                        })?;
                        if v >= field.modulus() {
                            return Err(syntax(
                                line,
                                format!("constant {v} is not a residue modulo {}", field.modulus()),
                            ));
                        }
                        Gate::Const(field.elem(v))
                    }
                    ("add", 5) => Gate::Add(operand(toks[3])?, operand(toks[4])?),
                    ("mul", 5) => Gate::Mul(operand(toks[3])?, operand(toks[4])?),
                    (op, _) => {
                        return Err(syntax(line, format!("unknown operation or arity `{op}`")))
                    }
                };
                ids.insert(id, gates.len());
                gates.push(gate);
                last_id = Some(id);
            }
            other => return Err(syntax(line, format!("unexpected token `{other}`"))),
        }
    }
    if outputs.is_empty() {
        return Err(syntax(text.lines().count().max(1), "no output declared"));
    }
    Circuit::new(field, nvars_decl.unwrap_or(max_var), gates, outputs)
}

pub fn serialize_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "nvars {}", c.nvars()).unwrap();
    for (i, g) in c.gates().iter().enumerate() {
        match *g {
            Gate::Input(v) => writeln!(s, "g{i} = input x{}", v + 1),
            Gate::Const(k) => writeln!(s, "g{i} = const {}", k.value()),
            Gate::Add(a, b) => writeln!(s, "g{i} = add g{a} g{b}"),
            Gate::Mul(a, b) => writeln!(s, "g{i} = mul g{a} g{b}"),
        }
        .unwrap();
    }
    for o in c.outputs() {
        writeln!(s, "output g{o}").unwrap();
    }
    s
}

pub fn read_circuit(path: impl AsRef<Path>, field: PrimeField) -> Result<Circuit> {
    parse_circuit(&std::fs::read_to_string(path)?, field)
}

pub fn write_circuit(path: impl AsRef<Path>, c: &Circuit) -> Result<()> {
    Ok(std::fs::write(path, serialize_circuit(c))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::mersenne61()
    }

    #[test]
    fn parses_square() {
        let c = parse_circuit("g0 = input x1\ng1 = mul g0 g0\noutput g1\n", f()).unwrap();
        assert_eq!(c.nvars(), 1);
        assert_eq!(c.eval(&[f().elem(7)]).unwrap(), vec![f().elem(49)]);
        assert_eq!(c.size(), 2);
    }

    #[test]
    fn round_trip_is_stable() {
        let text = "# comment\nnvars 3\ng0 = input x1\ng5 = input x3 # trailing\n\
                    g7 = const 12\ng8 = add g0 g5\ng9 = mul g8 g7\noutput g9\noutput g0\n";
        let c = parse_circuit(text, f()).unwrap();
        let s1 = serialize_circuit(&c);
        let c2 = parse_circuit(&s1, f()).unwrap();
        assert_eq!(c, c2);
        assert_eq!(serialize_circuit(&c2), s1);
        let pt = [f().elem(1), f().elem(2), f().elem(3)];
        assert_eq!(c.eval(&pt).unwrap(), vec![f().elem(48), f().elem(1)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_circuit("g0 = input x1\ng1 = plus g0 g0\noutput g1\n", f()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }));
        let e = parse_circuit("g0 = input x1\ng1 = add g0 g2\noutput g1\n", f()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }));
        let e = parse_circuit("nvars 1\ng0 = input x2\noutput g0\n", f()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }));
        let e = parse_circuit("g3 = input x1\ng2 = input x1\noutput g2\n", f()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }));
        let e = parse_circuit("g0 = const 2305843009213693951\noutput g0\n", f()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, .. }));
        assert!(parse_circuit("g0 = input x1\n", f()).is_err());
        assert!(parse_circuit("g0 = input x0\noutput g0\n", f()).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.slp");
        let c = parse_circuit("g0 = input x2\ng1 = add g0 g0\noutput g1\n", f()).unwrap();
        write_circuit(&path, &c).unwrap();
        assert_eq!(read_circuit(&path, f()).unwrap(), c);
        assert!(matches!(read_circuit(dir.path().join("missing"), f()), Err(Error::Io(_))));
    }
}
