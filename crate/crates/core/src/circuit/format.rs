//! OpenQASM 2.0 and the line-oriented debug listing.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, GateKind};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextFormat {
    Qasm,
    Listing,
}

impl std::str::FromStr for TextFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qasm" | "openqasm" => Ok(TextFormat::Qasm),
            "listing" | "txt" | "debug" => Ok(TextFormat::Listing),
            other => Err(Error::InvalidArgument(format!("unknown circuit format {other:?}"))),
        }
    }
}

pub fn export(c: &Circuit, format: TextFormat) -> Result<String> {
    match format {
        TextFormat::Qasm => to_qasm(c),
        TextFormat::Listing => Ok(to_listing(c)),
    }
}

pub fn import(text: &str, format: TextFormat) -> Result<Circuit> {
    match format {
        TextFormat::Qasm => from_qasm(text),
        TextFormat::Listing => from_listing(text),
    }
}

pub fn to_qasm(c: &Circuit) -> Result<String> {
    let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(s, "qreg q[{}];", c.n()).unwrap();
    for g in c.gates() {
        let line = match g {
            Gate::H(q) => format!("h q[{q}];"),
            Gate::X(q) => format!("x q[{q}];"),
            Gate::Rx(q, a) => format!("rx({a}) q[{q}];"),
            Gate::Ry(q, a) => format!("ry({a}) q[{q}];"),
            Gate::Rz(q, a) => format!("rz({a}) q[{q}];"),
            Gate::Phase(q, a) => format!("u1({a}) q[{q}];"),
            Gate::Cx(c, t) => format!("cx q[{c}],q[{t}];"),
            Gate::CPhase(c, t, a) => format!("cp({a}) q[{c}],q[{t}];"),
            Gate::Swap(a, b) => format!("swap q[{a}],q[{b}];"),
            Gate::Ccx(a, b, t) => format!("ccx q[{a}],q[{b}],q[{t}];"),
            Gate::Mcx(cs, t) if cs.is_empty() => format!("x q[{t}];"),
            Gate::Mcx(cs, t) if cs.len() == 1 => format!("cx q[{}],q[{t}];", cs[0]),
            Gate::Mcx(cs, t) if cs.len() == 2 => format!("ccx q[{}],q[{}],q[{t}];", cs[0], cs[1]),
            Gate::Mcry(cs, t, a) if cs.is_empty() => format!("ry({a}) q[{t}];"),
            g => return Err(Error::UnsupportedGate(g.kind().to_string())),
        };
        s.push_str(&line);
        s.push('\n');
    }
    Ok(s)
}

pub fn to_listing(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "QUBITS {}", c.n()).unwrap();
    for g in c.gates() {
        s.push_str(g.kind().name());
        for q in g.qubits() {
            write!(s, " {q}").unwrap();
        }
        if let Some(a) = g.angle() {
            write!(s, " {a}").unwrap();
        }
        s.push('\n');
    }
    s
}

fn kind_from_name(name: &str) -> Option<GateKind> {
    Some(match name.to_ascii_uppercase().as_str() {
        "H" => GateKind::H,
        "X" => GateKind::X,
        "RX" => GateKind::Rx,
        "RY" => GateKind::Ry,
        "RZ" => GateKind::Rz,
        "PHASE" | "P" | "U1" => GateKind::Phase,
        "CX" | "CNOT" => GateKind::Cx,
        "CPHASE" | "CP" | "CU1" => GateKind::CPhase,
        "SWAP" => GateKind::Swap,
        "CCX" | "TOFFOLI" => GateKind::Ccx,
        "MCX" => GateKind::Mcx,
        "MCRY" => GateKind::Mcry,
        _ => return None,
    })
}

fn has_angle(k: GateKind) -> bool {
    matches!(
        k,
        GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Phase | GateKind::CPhase | GateKind::Mcry
    )
}

pub fn from_listing(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line, msg };
        let mut toks = body.split_whitespace();
        let head = toks.next().expect("nonempty line");
        let rest: Vec<&str> = toks.collect();
        if head.eq_ignore_ascii_case("QUBITS") {
            let n = rest
                .first()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| perr("QUBITS needs a count".into()))?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| perr("missing QUBITS header".into()))?;
        let kind = kind_from_name(head).ok_or_else(|| perr(format!("unknown gate {head:?}")))?;
        let (qtoks, angle) = if has_angle(kind) {
            let (a, q) = rest.split_last().ok_or_else(|| perr("missing angle".into()))?;
            let a: f64 = a.parse().map_err(|_| perr(format!("bad angle {a:?}")))?;
            (q, Some(a))
        } else {
            (&rest[..], None)
        };
        let qubits = qtoks
            .iter()
            .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad qubit {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let g = Gate::from_parts(kind, &qubits, angle).map_err(|e| perr(e.to_string()))?;
        c.push(g).map_err(|e| perr(e.to_string()))?;
    }
    circuit.ok_or_else(|| Error::Parse { line: 0, msg: "empty listing".into() })
}

/// Evaluates `+ - * /`, parentheses, unary minus, numbers and `pi`.
struct Expr<'a> {
    s: &'a [u8],
    i: usize,
}

impl Expr<'_> {
    fn eval(text: &str) -> Option<f64> {
        let mut e = Expr { s: text.as_bytes(), i: 0 };
        let v = e.sum()?;
        e.ws();
        (e.i == e.s.len()).then_some(v)
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn sum(&mut self) -> Option<f64> {
        let mut v = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let r = self.product()?;
            v = if op == b'+' { v + r } else { v - r };
        }
        Some(v)
    }

    fn product(&mut self) -> Option<f64> {
        let mut v = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.i += 1;
            let r = self.factor()?;
            v = if op == b'*' { v * r } else { v / r };
        }
        Some(v)
    }

    fn factor(&mut self) -> Option<f64> {
        match self.peek()? {
            b'-' => {
                self.i += 1;
                Some(-self.factor()?)
            }
            b'+' => {
                self.i += 1;
                self.factor()
            }
            b'(' => {
                self.i += 1;
                let v = self.sum()?;
                (self.peek()? == b')').then(|| self.i += 1)?;
                Some(v)
            }
            _ => {
                let start = self.i;
                if self.s[self.i..].starts_with(b"pi") {
                    self.i += 2;
                    return Some(std::f64::consts::PI);
                }
                while self.i < self.s.len() {
                    let ch = self.s[self.i];
                    let exp_sign = (ch == b'-' || ch == b'+')
                        && self.i > start
                        && matches!(self.s[self.i - 1], b'e' | b'E');
                    if ch.is_ascii_digit() || ch == b'.' || ch == b'e' || ch == b'E' || exp_sign {
                        self.i += 1;
                    } else {
                        break;
                    }
                }
                std::str::from_utf8(&self.s[start..self.i]).ok()?.parse().ok()
            }
        }
    }
}

fn parse_operand(tok: &str) -> Option<usize> {
    let tok = tok.trim();
    let open = tok.find('[')?;
    let close = tok.rfind(']')?;
    tok[open + 1..close].trim().parse().ok()
}

pub fn from_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut cleaned = String::with_capacity(text.len());
    for raw in text.lines() {
        cleaned.push_str(raw.split("//").next().unwrap_or(""));
        cleaned.push('\n');
    }
    let (mut pos, mut scanned, mut line) = (0, 0, 1);
    for stmt in cleaned.split(';') {
        let start = pos + stmt.len() - stmt.trim_start().len();
        line += cleaned[scanned..start].matches('\n').count();
        scanned = start;
        pos += stmt.len() + 1;
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line, msg };
        let lower = stmt.to_ascii_lowercase();
        if lower.starts_with("openqasm") || lower.starts_with("include") || lower.starts_with("creg") || lower.starts_with("barrier") {
            continue;
        }
        if lower.starts_with("qreg") {
            if circuit.is_some() {
                return Err(perr("only one quantum register is supported".into()));
            }
            let n = parse_operand(&stmt[4..]).ok_or_else(|| perr("bad qreg".into()))?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| perr("gate before qreg".into()))?;
        let name_end = stmt.find(|ch: char| ch == '(' || ch.is_whitespace()).unwrap_or(stmt.len());
        let name = &stmt[..name_end];
        let mut rest = stmt[name_end..].trim_start();
        let mut angle = None;
        if rest.starts_with('(') {
            let close = rest.rfind(')').ok_or_else(|| perr("unclosed parameter list".into()))?;
            let expr = &rest[1..close];
            angle = Some(Expr::eval(expr).ok_or_else(|| perr(format!("bad angle {expr:?}")))?);
            rest = rest[close + 1..].trim_start();
        }
        let kind = match name.to_ascii_lowercase().as_str() {
            "h" => GateKind::H,
            "x" => GateKind::X,
            "rx" => GateKind::Rx,
            "ry" => GateKind::Ry,
            "rz" => GateKind::Rz,
            "u1" | "p" => GateKind::Phase,
            "cx" => GateKind::Cx,
            "cp" | "cu1" => GateKind::CPhase,
            "swap" => GateKind::Swap,
            "ccx" => GateKind::Ccx,
            other => return Err(perr(format!("unsupported instruction {other:?}"))),
        };
        let qubits = rest
            .split(',')
            .map(|t| parse_operand(t).ok_or_else(|| perr(format!("bad operand {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let g = Gate::from_parts(kind, &qubits, angle).map_err(|e| perr(e.to_string()))?;
        c.push(g).map_err(|e| perr(e.to_string()))?;
    }
    circuit.ok_or_else(|| Error::Parse { line: 0, msg: "no qreg declaration".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_export() {
        let c = Circuit::from_gates(1, vec![Gate::H(0)]).unwrap();
        let q = to_qasm(&c).unwrap();
        assert_eq!(q.matches("h q[0];").count(), 1);
    }

    #[test]
    fn ccx_not_predecomposed() {
        let c = Circuit::from_gates(3, vec![Gate::Ccx(0, 1, 2)]).unwrap();
        let q = to_qasm(&c).unwrap();
        assert!(q.contains("ccx q[0],q[1],q[2];"));
        assert!(!q.contains("cx q[1],q[2]"));
    }

    #[test]
    fn wide_gates_rejected_in_qasm() {
        let c = Circuit::from_gates(4, vec![Gate::Mcx(vec![0, 1, 2], 3)]).unwrap();
        assert!(matches!(to_qasm(&c), Err(Error::UnsupportedGate(_))));
        assert!(to_listing(&c).contains("MCX 0 1 2 3"));
    }

    #[test]
    fn expressions() {
        let pi = std::f64::consts::PI;
        assert_eq!(Expr::eval("pi/2"), Some(pi / 2.0));
        assert_eq!(Expr::eval("-pi/4"), Some(-pi / 4.0));
        assert_eq!(Expr::eval("2*(pi-1)"), Some(2.0 * (pi - 1.0)));
        assert_eq!(Expr::eval("1.5e-3"), Some(1.5e-3));
        assert_eq!(Expr::eval("-2.5E+2"), Some(-250.0));
        assert_eq!(Expr::eval("pi pi"), None);
    }

    #[test]
    fn qasm_import_handles_comments_and_pi() {
        let text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// hi\nqreg r[2];\ncreg c[2];\nh r[0]; cp(pi/2) r[0], r[1];\n";
        let c = from_qasm(text).unwrap();
        assert_eq!(c.gates(), &[Gate::H(0), Gate::CPhase(0, 1, std::f64::consts::FRAC_PI_2)]);
    }

    #[test]
    fn qasm_errors_report_lines() {
        let text = "OPENQASM 2.0;\nqreg q[2];\nh q[0];\nfoo q[1];\n";
        match from_qasm(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(from_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[3];").is_err());
    }

    #[test]
    fn listing_round_trip() {
        let c = Circuit::from_gates(
            4,
            vec![
                Gate::Mcry(vec![0, 2], 3, -0.1234567890123),
                Gate::Mcx(vec![1, 2, 3], 0),
                Gate::Phase(1, 1e-300),
                Gate::Swap(0, 3),
            ],
        )
        .unwrap();
        assert_eq!(from_listing(&to_listing(&c)).unwrap(), c);
        assert!(from_listing("H 0\n").is_err());
    }
}
