//! Stabilizer gates, circuits, and the `.qc` text format.
//!
//! `.qc` holds one gate per line (`h q`, `p q`, `cnot c t`, `cz c t`, `m q`).
//! Anything after `#` is a comment. The printer emits a leading
//! `# qubits <n>` comment, which the parser honors; without it the width is
//! one more than the largest qubit index.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    P(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
    Measure(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    P,
    Cnot,
    Cz,
    Measure,
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::P(_) => GateKind::P,
            Gate::Cnot(..) => GateKind::Cnot,
            Gate::Cz(..) => GateKind::Cz,
            Gate::Measure(_) => GateKind::Measure,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::P(q) | Gate::Measure(q) => vec![q],
            Gate::Cnot(c, t) | Gate::Cz(c, t) => vec![c, t],
        }
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self, Gate::Measure(_))
    }

    /// Checks indices against a register of `n` qubits.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match *self {
            Gate::H(q) | Gate::P(q) | Gate::Measure(q) => {
                if q >= n {
                    return Err(Error::QubitOutOfRange { qubit: q, n });
                }
            }
            Gate::Cnot(c, t) | Gate::Cz(c, t) => {
                for q in [c, t] {
                    if q >= n {
                        return Err(Error::QubitOutOfRange { qubit: q, n });
                    }
                }
                if c == t {
                    return Err(Error::RepeatedQubit(c));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::P(q) => write!(f, "p {q}"),
            Gate::Cnot(c, t) => write!(f, "cnot {c} {t}"),
            Gate::Cz(c, t) => write!(f, "cz {c} {t}"),
            Gate::Measure(q) => write!(f, "m {q}"),
        }
    }
}

/// An ordered gate list on `n` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.check_range(n)?;
        }
        Ok(Circuit { n, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check_range(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, gate: Gate) {
        debug_assert!(gate.check_range(self.n).is_ok());
        self.gates.push(gate);
    }

    pub fn is_unitary(&self) -> bool {
        self.gates.iter().all(Gate::is_unitary)
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    pub fn to_qc_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# qubits {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_index(tok: &str, line: usize, column: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, column, format!("expected a qubit index, found {tok:?}")))
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses `.qc` text.
pub fn parse_qc(text: &str) -> Result<Circuit> {
    let mut declared = None;
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (body, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            let words: Vec<&str> = c.split_whitespace().collect();
            if words.len() == 2 && words[0] == "qubits" {
                declared = Some(parse_index(words[1], line_no, raw.find(words[1]).unwrap_or(0) + 1)?);
            }
        }
        let toks = tokens(body);
        if toks.is_empty() {
            continue;
        }
        let (col, name) = toks[0];
        let arity = match name {
            "h" | "p" | "m" => 1,
            "cnot" | "cz" => 2,
            _ => return Err(Error::parse(line_no, col, format!("unknown gate {name:?}"))),
        };
        if toks.len() != arity + 1 {
            let column = toks.get(arity + 1).map_or(raw.trim_end().len() + 1, |t| t.0);
            return Err(Error::parse(
                line_no,
                column,
                format!("gate {name:?} takes {arity} qubit index(es)"),
            ));
        }
        let a = parse_index(toks[1].1, line_no, toks[1].0)?;
        let gate = match name {
            "h" => Gate::H(a),
            "p" => Gate::P(a),
            "m" => Gate::Measure(a),
            _ => {
                let b = parse_index(toks[2].1, line_no, toks[2].0)?;
                if a == b {
                    return Err(Error::parse(line_no, toks[2].0, "control and target must differ"));
                }
                if name == "cnot" {
                    Gate::Cnot(a, b)
                } else {
                    Gate::Cz(a, b)
                }
            }
        };
        gates.push((line_no, gate));
    }
    let inferred = gates
        .iter()
        .flat_map(|(_, g)| g.qubits())
        .max()
        .map_or(0, |m| m + 1);
    let n = declared.unwrap_or(inferred);
    for &(line_no, g) in &gates {
        if g.check_range(n).is_err() {
            return Err(Error::parse(line_no, 1, format!("gate `{g}` exceeds the declared {n} qubits")));
        }
    }
    Ok(Circuit {
        n,
        gates: gates.into_iter().map(|(_, g)| g).collect(),
    })
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_qc(s)
    }
}
