//! Source problems of the hardness constructions: exact cover by 3-sets
//! and 3-CNF formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::Deserialize;

use crate::{Error, Result};

/// Exact cover by 3-sets where every element lies in exactly three sets.
/// The collection may repeat a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3CInstance {
    elements: Vec<String>,
    sets: Vec<[usize; 3]>,
}

/// Indices into [`X3CInstance::sets`], sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactCover(Vec<usize>);

#[derive(Deserialize)]
#[serde(untagged)]
enum Element {
    Name(String),
    Number(i64),
}

impl Element {
    fn into_name(self) -> String {
        match self {
            Element::Name(s) => s,
            Element::Number(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct X3CDoc {
    #[serde(rename = "X")]
    elements: Vec<Element>,
    #[serde(rename = "C")]
    sets: Vec<Vec<Element>>,
}

impl X3CInstance {
    /// Checks the invariants: distinct elements, sets of three distinct
    /// elements of the ground set, every element in exactly three sets.
    pub fn new<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        sets: impl IntoIterator<Item = [S; 3]>,
    ) -> Result<Self> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let index: BTreeMap<&str, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        if index.len() != elements.len() {
            return Err(Error::domain("ground set lists an element twice"));
        }
        if elements.is_empty() || elements.len() % 3 != 0 {
            return Err(Error::domain(format!(
                "ground set size {} is not a positive multiple of 3",
                elements.len()
            )));
        }
        let mut resolved = Vec::new();
        for (j, set) in sets.into_iter().enumerate() {
            let mut members = [0; 3];
            for (slot, name) in members.iter_mut().zip(set) {
                let name: String = name.into();
                *slot = *index
                    .get(name.as_str())
                    .ok_or_else(|| Error::domain(format!("set {j} names unknown element {name:?}")))?;
            }
            if members[0] == members[1] || members[0] == members[2] || members[1] == members[2] {
                return Err(Error::domain(format!("set {j} repeats an element")));
            }
            members.sort_unstable();
            resolved.push(members);
        }
        let mut count = vec![0usize; elements.len()];
        for set in &resolved {
            for &e in set {
                count[e] += 1;
            }
        }
        if let Some(e) = count.iter().position(|&c| c != 3) {
            return Err(Error::domain(format!(
                "element {:?} lies in {} sets instead of 3",
                elements[e], count[e]
            )));
        }
        Ok(X3CInstance {
            elements,
            sets: resolved,
        })
    }

    /// Parses `{"X": [...], "C": [[...], ...]}`. Elements may be strings
    /// or integers.
    pub fn from_json(text: &[u8]) -> Result<Self> {
        let doc: X3CDoc = serde_json::from_slice(text)?;
        let mut sets = Vec::with_capacity(doc.sets.len());
        for (j, set) in doc.sets.into_iter().enumerate() {
            let set: Vec<String> = set.into_iter().map(Element::into_name).collect();
            let set: [String; 3] = set.try_into().map_err(|s: Vec<String>| {
                Error::domain(format!("set {j} has {} elements instead of 3", s.len()))
            })?;
            sets.push(set);
        }
        Self::new(doc.elements.into_iter().map(Element::into_name), sets)
    }

    pub fn to_json(&self) -> String {
        let sets: Vec<Vec<&str>> = self
            .sets
            .iter()
            .map(|s| s.iter().map(|&e| self.elements[e].as_str()).collect())
            .collect();
        serde_json::json!({ "X": self.elements, "C": sets }).to_string()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// Sets as sorted element indices.
    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Number of sets, p. Always equal to the number of elements.
    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    /// Size of an exact cover, q = p / 3.
    pub fn cover_size(&self) -> usize {
        self.elements.len() / 3
    }

    /// Whether the chosen sets partition the ground set.
    pub fn check_cover(&self, cover: &ExactCover) -> Result<()> {
        let mut seen = vec![false; self.elements.len()];
        for &j in cover.indices() {
            let set = self
                .sets
                .get(j)
                .ok_or_else(|| Error::domain(format!("cover names set {j}, which does not exist")))?;
            for &e in set {
                if std::mem::replace(&mut seen[e], true) {
                    return Err(Error::domain(format!(
                        "element {:?} is covered twice",
                        self.elements[e]
                    )));
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(e) => Err(Error::domain(format!(
                "element {:?} is not covered",
                self.elements[e]
            ))),
            None => Ok(()),
        }
    }
}

impl ExactCover {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        ExactCover(set.into_iter().collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, set: usize) -> bool {
        self.0.binary_search(&set).is_ok()
    }
}

/// Random instance with a planted exact cover. The collection is three
/// random partitions of the ground set into triples, so every element lies
/// in exactly three sets; the first partition is the planted cover.
pub fn random_x3c<R: Rng>(cover_size: usize, rng: &mut R) -> Result<(X3CInstance, ExactCover)> {
    if cover_size == 0 {
        return Err(Error::domain("cover size must be positive"));
    }
    let n = 3 * cover_size;
    let elements: Vec<String> = (1..=n).map(|e| e.to_string()).collect();
    let mut tagged: Vec<([usize; 3], bool)> = Vec::with_capacity(n);
    for round in 0..3 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for triple in order.chunks(3) {
            tagged.push(([triple[0], triple[1], triple[2]], round == 0));
        }
    }
    tagged.shuffle(rng);
    let cover = ExactCover::new(tagged.iter().enumerate().filter(|(_, t)| t.1).map(|(j, _)| j));
    let sets = tagged
        .iter()
        .map(|(s, _)| s.map(|e| elements[e].clone()));
    let inst = X3CInstance::new(elements.clone(), sets)?;
    Ok((inst, cover))
}

/// A literal over variables numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    /// From the signed DIMACS form: `3` is x3, `-3` is its negation.
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        (lit != 0).then(|| Literal {
            var: lit.unsigned_abs() as usize,
            positive: lit > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn holds(self, assignment: &TruthAssignment) -> bool {
        assignment.value(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// CNF formula with exactly three literals per clause. A clause may repeat
/// a literal or a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf3Formula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

/// Truth values of variables 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthAssignment(Vec<bool>);

impl TruthAssignment {
    pub fn new(values: Vec<bool>) -> Self {
        TruthAssignment(values)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    /// Value of variable `var`, numbered from 1.
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }
}

/// Largest variable count the truth-table check accepts.
pub const TRUTH_TABLE_LIMIT: usize = 20;

impl Cnf3Formula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var == 0 || l.var > num_vars) {
                return Err(Error::domain(format!(
                    "clause {} uses variable {} outside 1..={num_vars}",
                    j + 1,
                    l.var
                )));
            }
        }
        Ok(Cnf3Formula { num_vars, clauses })
    }

    /// Parses DIMACS CNF: comment lines start with `c`, the header is
    /// `p cnf <vars> <clauses>`, and each clause is three nonzero literals
    /// followed by `0`. Clauses may span lines.
    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<Literal> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let at = |col: usize| format!("{}:{}", lineno + 1, col + 1);
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            if trimmed.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(at(0), "second problem line"));
                }
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| {
                    Error::parse(at(0), "expected `p cnf <variables> <clauses>`")
                })?);
                continue;
            }
            if header.is_none() {
                return Err(Error::parse(at(0), "clause before the problem line"));
            }
            for (col, token) in tokens(line) {
                let lit: i64 = token
                    .parse()
                    .map_err(|_| Error::parse(at(col), format!("invalid literal {token:?}")))?;
                match Literal::from_dimacs(lit) {
                    Some(l) => pending.push(l),
                    None => {
                        let clause: [Literal; 3] = pending.as_slice().try_into().map_err(|_| {
                            Error::parse(
                                at(col),
                                format!("clause has {} literals instead of 3", pending.len()),
                            )
                        })?;
                        clauses.push(clause);
                        pending.clear();
                    }
                }
            }
        }
        let (num_vars, num_clauses) =
            header.ok_or_else(|| Error::parse("1:1", "missing problem line"))?;
        if !pending.is_empty() {
            return Err(Error::parse("end", "last clause is not terminated by 0"));
        }
        if clauses.len() != num_clauses {
            return Err(Error::parse(
                "end",
                format!("header announces {num_clauses} clauses, found {}", clauses.len()),
            ));
        }
        Self::new(num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                out.push_str(&format!("{l} "));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Whether every clause names three different variables.
    pub fn has_distinct_variables(&self) -> bool {
        self.clauses
            .iter()
            .all(|[a, b, c]| a.var != b.var && a.var != c.var && b.var != c.var)
    }

    pub fn check_assignment(&self, assignment: &TruthAssignment) -> Result<()> {
        if assignment.num_vars() != self.num_vars {
            return Err(Error::domain(format!(
                "assignment has {} values for {} variables",
                assignment.num_vars(),
                self.num_vars
            )));
        }
        match self
            .clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.holds(assignment)))
        {
            Some(j) => Err(Error::domain(format!("clause {} is not satisfied", j + 1))),
            None => Ok(()),
        }
    }

    /// First satisfying assignment in truth-table order (all false first,
    /// variable 1 as the lowest bit), by exhaustive search.
    pub fn solve_by_truth_table(&self) -> Result<Option<TruthAssignment>> {
        if self.num_vars > TRUTH_TABLE_LIMIT {
            return Err(Error::domain(format!(
                "truth table over {} variables exceeds the limit of {TRUTH_TABLE_LIMIT}",
                self.num_vars
            )));
        }
        Ok((0u32..1 << self.num_vars)
            .map(|bits| {
                TruthAssignment((0..self.num_vars).map(|v| bits >> v & 1 == 1).collect())
            })
            .find(|a| self.check_assignment(a).is_ok()))
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize, t))
}

/// Random formula satisfied by a planted random assignment. With
/// `distinct` every clause names three different variables, which needs
/// at least three variables.
pub fn random_formula<R: Rng>(
    num_vars: usize,
    num_clauses: usize,
    distinct: bool,
    rng: &mut R,
) -> Result<(Cnf3Formula, TruthAssignment)> {
    if num_vars == 0 || (distinct && num_vars < 3) {
        return Err(Error::domain(format!("too few variables: {num_vars}")));
    }
    let planted = TruthAssignment((0..num_vars).map(|_| rng.random_bool(0.5)).collect());
    let vars: Vec<usize> = (1..=num_vars).collect();
    let mut clauses = Vec::with_capacity(num_clauses);
    for _ in 0..num_clauses {
        let chosen: Vec<usize> = if distinct {
            vars.choose_multiple(rng, 3).copied().collect()
        } else {
            (0..3).map(|_| rng.random_range(1..=num_vars)).collect()
        };
        let mut clause = [0, 1, 2].map(|i| Literal {
            var: chosen[i],
            positive: rng.random_bool(0.5),
        });
        if !clause.iter().any(|l| l.holds(&planted)) {
            let flip = rng.random_range(0..3);
            clause[flip].positive = !clause[flip].positive;
        }
        clauses.push(clause);
    }
    Ok((Cnf3Formula::new(num_vars, clauses)?, planted))
}
