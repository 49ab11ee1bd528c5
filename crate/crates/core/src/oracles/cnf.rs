//! CNF formulas with clauses of one to three literals.

use std::fmt;

use rand::Rng;

use crate::error::{parse_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }

    fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var + 1)
        } else {
            write!(f, "x{}", self.var + 1)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cnf3Formula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl Cnf3Formula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() || c.len() > 3 {
                return Err(Error::Precondition(format!("clause {} has {} literals; expected 1 to 3", i + 1, c.len())));
            }
            if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                return Err(Error::Precondition(format!("clause {} uses {l} beyond {num_vars} variables", i + 1)));
            }
        }
        Ok(Cnf3Formula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars && self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS cnf. Clauses may span lines; each ends with `0`.
    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
                continue;
            }
            if trimmed.starts_with('p') {
                let toks: Vec<&str> = trimmed.split_whitespace().collect();
                if header.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                if toks.len() != 4 || toks[1] != "cnf" {
                    return Err(parse_err(line, "expected `p cnf <vars> <clauses>`"));
                }
                let v = toks[2].parse().map_err(|_| parse_err(line, "bad variable count"))?;
                let c = toks[3].parse().map_err(|_| parse_err(line, "bad clause count"))?;
                header = Some((v, c));
                continue;
            }
            let Some((nv, _)) = header else {
                return Err(parse_err(line, "clause before problem line"));
            };
            for tok in trimmed.split_whitespace() {
                let x: i64 = tok.parse().map_err(|_| parse_err(line, format!("bad literal `{tok}`")))?;
                if x == 0 {
                    if current.is_empty() {
                        return Err(parse_err(line, "empty clause"));
                    }
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                let var = x.unsigned_abs() as usize;
                if var > nv {
                    return Err(parse_err(line, format!("variable {var} exceeds declared {nv}")));
                }
                current.push(Literal { var: var - 1, negated: x < 0 });
                if current.len() > 3 {
                    return Err(parse_err(line, "clause has more than 3 literals"));
                }
            }
        }
        let Some((nv, nc)) = header else {
            return Err(parse_err(last_line, "missing `p cnf` line"));
        };
        if !current.is_empty() {
            return Err(parse_err(last_line, "last clause is not terminated by 0"));
        }
        if clauses.len() != nc {
            return Err(parse_err(0, format!("header declares {nc} clauses, found {}", clauses.len())));
        }
        Cnf3Formula::new(nv, clauses)
    }

    /// Every formula with `1..=max_vars` variables and `1..=max_clauses`
    /// clauses, clauses taken as multisets of 1–3 literals and formulas as
    /// nondecreasing clause sequences.
    pub fn exhaustive_family(max_vars: usize, max_clauses: usize) -> Vec<Cnf3Formula> {
        let mut out = Vec::new();
        for nv in 1..=max_vars {
            let lits: Vec<Literal> = (0..nv).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect();
            let mut clauses = Vec::new();
            for len in 1..=3 {
                multisets(&lits, len, 0, &mut Vec::new(), &mut clauses);
            }
            for m in 1..=max_clauses {
                let mut idx = Vec::new();
                index_multisets(clauses.len(), m, 0, &mut idx, &mut |ix| {
                    let cs = ix.iter().map(|&i| clauses[i].clone()).collect();
                    out.push(Cnf3Formula::new(nv, cs).expect("well-formed"));
                });
            }
        }
        out
    }

    /// A formula with exactly `num_clauses` clauses of three literals each.
    pub fn random<R: Rng>(rng: &mut R, num_vars: usize, num_clauses: usize) -> Cnf3Formula {
        let clauses = (0..num_clauses)
            .map(|_| {
                (0..3)
                    .map(|_| Literal { var: rng.gen_range(0..num_vars), negated: rng.gen_bool(0.5) })
                    .collect()
            })
            .collect();
        Cnf3Formula::new(num_vars, clauses).expect("well-formed")
    }
}

fn multisets(lits: &[Literal], len: usize, from: usize, cur: &mut Vec<Literal>, out: &mut Vec<Vec<Literal>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for i in from..lits.len() {
        cur.push(lits[i]);
        multisets(lits, len, i, cur, out);
        cur.pop();
    }
}

fn index_multisets(n: usize, len: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for i in from..n {
        cur.push(i);
        index_multisets(n, len, i, cur, f);
        cur.pop();
    }
}

impl fmt::Display for Cnf3Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            f.write_str("(")?;
            for (j, l) in c.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ∨ ")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let f = Cnf3Formula::new(3, vec![vec![Literal::pos(0), Literal::neg(1)], vec![Literal::pos(2)]]).unwrap();
        let text = f.to_dimacs();
        assert_eq!(text, "p cnf 3 2\n1 -2 0\n3 0\n");
        assert_eq!(Cnf3Formula::from_dimacs(&text).unwrap(), f);
        assert_eq!(f.to_string(), "(x1 ∨ ¬x2) ∧ (x3)");
    }

    #[test]
    fn dimacs_errors_carry_lines() {
        let e = Cnf3Formula::from_dimacs("p cnf 2 1\n1 2 -1 2 0\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "clause has more than 3 literals".into() });
        let e = Cnf3Formula::from_dimacs("c hi\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = Cnf3Formula::from_dimacs("p cnf 1 1\n2 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn family_size() {
        // 1 var: 2+3+4 = 9 clauses; 2 vars: 4+10+20 = 34 clauses.
        let fam = Cnf3Formula::exhaustive_family(2, 2);
        assert_eq!(fam.len(), 9 + 45 + 34 + 595);
    }
}
