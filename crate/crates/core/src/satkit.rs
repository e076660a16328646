//! 3-CNF formulas: DIMACS parsing, evaluation, brute-force solving and the
//! (3,B2) occurrence check.

use std::fmt;

use crate::error::{Error, Result};

/// A literal over a zero-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn from_dimacs(code: i64) -> Option<Self> {
        let var = usize::try_from(code.unsigned_abs()).ok()?.checked_sub(1)?;
        Some(Literal {
            var,
            positive: code > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn value(self, phi: &Assignment) -> bool {
        phi.values[self.var] == self.positive
    }

    /// `x3` for the positive literal of the third variable, `nx3` for its negation.
    pub fn name(self) -> String {
        if self.positive {
            format!("x{}", self.var + 1)
        } else {
            format!("nx{}", self.var + 1)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

pub type Clause = [Literal; 3];

/// A CNF formula whose clauses all have exactly three literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let mut fixed = Vec::with_capacity(clauses.len());
        for (i, clause) in clauses.into_iter().enumerate() {
            let clause: Clause = clause.try_into().map_err(|c: Vec<Literal>| {
                Error::InvalidFormula(format!("clause {} has {} literals, expected 3", i + 1, c.len()))
            })?;
            if let Some(l) = clause.iter().find(|l| l.var >= vars) {
                return Err(Error::InvalidFormula(format!(
                    "clause {} mentions variable {} but only {vars} are declared",
                    i + 1,
                    l.var + 1
                )));
            }
            fixed.push(clause);
        }
        Ok(CnfFormula {
            vars,
            clauses: fixed,
        })
    }

    /// Builds from DIMACS-style signed literals.
    pub fn from_dimacs_clauses(vars: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&code| {
                        Literal::from_dimacs(code)
                            .ok_or_else(|| Error::InvalidFormula(format!("literal {code}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, clauses)
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Clause indices containing `lit`, in clause order (with repetition if a clause repeats it).
    pub fn occurrences(&self, lit: Literal) -> Vec<usize> {
        self.clauses
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().filter(move |&&l| l == lit).map(move |_| i))
            .collect()
    }

    /// Whether every clause mentions three different variables.
    pub fn has_distinct_variable_clauses(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c[0].var != c[1].var && c[0].var != c[2].var && c[1].var != c[2].var)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }

    /// Parses DIMACS CNF. Comment lines start with `c`; a `%` line ends the input.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
                }
                let vars = parts[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, "bad variable count"))?;
                let count = parts[3]
                    .parse()
                    .map_err(|_| Error::parse(line_no, "bad clause count"))?;
                header = Some((vars, count));
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(Error::parse(line_no, "clause before problem line"));
            };
            for token in line.split_whitespace() {
                let code: i64 = token
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad literal `{token}`")))?;
                if code == 0 {
                    if current.len() != 3 {
                        return Err(Error::parse(
                            line_no,
                            format!("clause has {} literals, expected 3", current.len()),
                        ));
                    }
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                let lit = Literal::from_dimacs(code).expect("nonzero literal");
                if lit.var >= vars {
                    return Err(Error::parse(
                        line_no,
                        format!("variable {} exceeds declared count {vars}", lit.var + 1),
                    ));
                }
                current.push(lit);
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::parse(last_line, "missing problem line"))?;
        if !current.is_empty() {
            return Err(Error::parse(last_line, "unterminated clause"));
        }
        if clauses.len() != count {
            return Err(Error::parse(
                last_line,
                format!("header declares {count} clauses, found {}", clauses.len()),
            ));
        }
        Self::new(vars, clauses)
    }
}

/// A total truth assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// Bit `i` of `mask` is the value of variable `i`.
    pub fn from_mask(vars: usize, mask: u64) -> Self {
        Assignment::new((0..vars).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whitespace-separated DIMACS literals, e.g. `1 -2 3`.
    pub fn to_dimacs(&self) -> String {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| Literal { var: i, positive: b }.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses signed DIMACS literals; an optional trailing `0` and a leading `v` are ignored.
    pub fn parse(text: &str, vars: usize) -> Result<Self> {
        let mut values = vec![None; vars];
        for token in text.split_whitespace().filter(|&t| t != "v") {
            let code: i64 = token
                .parse()
                .map_err(|_| Error::parse(1, format!("bad literal `{token}`")))?;
            if code == 0 {
                break;
            }
            let lit = Literal::from_dimacs(code).expect("nonzero literal");
            if lit.var >= vars {
                return Err(Error::parse(1, format!("variable {} out of range", lit.var + 1)));
            }
            values[lit.var] = Some(lit.positive);
        }
        let got = values.iter().filter(|v| v.is_some()).count();
        if got != vars {
            return Err(Error::PartialAssignment { expected: vars, got });
        }
        Ok(Assignment::new(values.into_iter().map(Option::unwrap).collect()))
    }
}

pub fn eval(f: &CnfFormula, phi: &Assignment) -> Result<bool> {
    if phi.len() != f.var_count() {
        return Err(Error::PartialAssignment {
            expected: f.var_count(),
            got: phi.len(),
        });
    }
    Ok(f.clauses().iter().all(|c| c.iter().any(|l| l.value(phi))))
}

pub const BRUTE_SOLVE_MAX_VARS: usize = 25;

/// First satisfying assignment in increasing bitmask order (bit `i` = variable `i`).
pub fn brute_solve(f: &CnfFormula) -> Result<Option<Assignment>> {
    if f.var_count() > BRUTE_SOLVE_MAX_VARS {
        return Err(Error::ScaleGuard(format!(
            "brute-force SAT limited to {BRUTE_SOLVE_MAX_VARS} variables, got {}",
            f.var_count()
        )));
    }
    let masks: Vec<[(u64, bool); 3]> = f
        .clauses()
        .iter()
        .map(|c| c.map(|l| (1u64 << l.var, l.positive)))
        .collect();
    for mask in 0u64..(1u64 << f.var_count()) {
        let sat = masks
            .iter()
            .all(|c| c.iter().any(|&(bit, pos)| (mask & bit != 0) == pos));
        if sat {
            return Ok(Some(Assignment::from_mask(f.var_count(), mask)));
        }
    }
    Ok(None)
}

/// Whether each literal `x` and `¬x` of every variable occurs exactly twice.
pub fn validate_3b2(f: &CnfFormula) -> bool {
    let mut counts = vec![[0usize; 2]; f.var_count()];
    for c in f.clauses() {
        for l in c {
            counts[l.var][usize::from(l.positive)] += 1;
        }
    }
    counts.iter().all(|&[neg, pos]| neg == 2 && pos == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_clause() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(3, &[[1, 2, 3], [1, -2, -3]]).unwrap()
    }

    fn balanced() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(3, &[[1, 2, 3], [1, -2, -3], [-1, 2, -3], [-1, -2, 3]])
            .unwrap()
    }

    fn all_eight() -> CnfFormula {
        let mut clauses = Vec::new();
        for mask in 0..8 {
            let lit = |i: i64| if mask >> (i - 1) & 1 == 1 { i } else { -i };
            clauses.push([lit(1), lit(2), lit(3)]);
        }
        CnfFormula::from_dimacs_clauses(3, &clauses).unwrap()
    }

    #[test]
    fn brute_solve_finds_x1_first() {
        let phi = brute_solve(&two_clause()).unwrap().unwrap();
        assert_eq!(phi.values, vec![true, false, false]);
        assert!(eval(&two_clause(), &phi).unwrap());
    }

    #[test]
    fn all_polarity_formula_is_unsat() {
        assert_eq!(brute_solve(&all_eight()).unwrap(), None);
    }

    #[test]
    fn empty_formula() {
        let f = CnfFormula::new(2, vec![]).unwrap();
        assert_eq!(brute_solve(&f).unwrap(), Some(Assignment::new(vec![false, false])));
        assert!(eval(&f, &Assignment::new(vec![true, false])).unwrap());
        assert!(!validate_3b2(&f));
        assert!(validate_3b2(&CnfFormula::new(0, vec![]).unwrap()));
    }

    #[test]
    fn three_b2_validation() {
        assert!(validate_3b2(&balanced()));
        assert!(!validate_3b2(&two_clause()));
    }

    #[test]
    fn evaluation() {
        let f = two_clause();
        assert!(eval(&f, &Assignment::new(vec![true; 3])).unwrap());
        assert!(!eval(&f, &Assignment::new(vec![false; 3])).unwrap());
        assert_eq!(
            eval(&f, &Assignment::new(vec![true])),
            Err(Error::PartialAssignment { expected: 3, got: 1 })
        );
    }

    #[test]
    fn brute_solve_scale_guard() {
        let f = CnfFormula::new(26, vec![]).unwrap();
        assert!(matches!(brute_solve(&f), Err(Error::ScaleGuard(_))));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = balanced();
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn dimacs_parsing_details() {
        let text = "c example\np cnf 3 2\n1 2\n3 0 -1 -2 -3 0\n%\n0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.clauses().len(), 2);
        assert_eq!(f.clauses()[1], [Literal::neg(0), Literal::neg(1), Literal::neg(2)]);
    }

    #[test]
    fn dimacs_rejects_non_ternary_clauses() {
        let err = CnfFormula::parse_dimacs("p cnf 3 1\n1 2 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 2 3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("1 2 3 0\n").is_err());
    }

    #[test]
    fn assignment_parsing() {
        let phi = Assignment::parse("v 1 -2 3 0", 3).unwrap();
        assert_eq!(phi.values, vec![true, false, true]);
        assert_eq!(phi.to_dimacs(), "1 -2 3");
        assert!(matches!(
            Assignment::parse("1 2", 3),
            Err(Error::PartialAssignment { expected: 3, got: 2 })
        ));
    }
}
