//! Constructive hardness gadgets.
//!
//! Two composable constructions: a 3-CNF formula becomes a set of binary
//! string templates over `{0, 1, *}` (three per clause, made mutually
//! exclusive by a two-bit suffix block per clause), and a template set
//! becomes a line network with one parallel edge pair per bit position and
//! one hidden state per template. A source-to-sink path then corresponds to
//! a bitstring, and its reliability is exactly (templates matched) / d.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Edge, Network, Path};

/// Binary string templates of a common width over the alphabet `{0, 1, *}`,
/// where `*` matches either bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    pub width: usize,
    pub templates: Vec<String>,
}

impl TemplateSet {
    pub fn new(width: usize, templates: Vec<String>) -> Result<Self> {
        for t in &templates {
            if t.chars().count() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    actual: t.chars().count(),
                });
            }
            if let Some(bad) = t.chars().find(|c| !matches!(c, '0' | '1' | '*')) {
                return Err(Error::BadParameter(format!(
                    "template `{t}` contains `{bad}`; only 0, 1, * are allowed"
                )));
            }
        }
        Ok(TemplateSet { width, templates })
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }
}

/// A 3-CNF formula: exactly three literals per clause, no variable twice in
/// one clause. Literals follow the DIMACS convention: a nonzero integer
/// whose sign is the polarity and whose magnitude is the 1-based variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for clause in &clauses {
            let mut vars = [0usize; 3];
            for (slot, &literal) in vars.iter_mut().zip(clause) {
                if literal == 0 {
                    return Err(Error::BadParameter("literal 0 is not allowed".into()));
                }
                let var = literal.unsigned_abs() as usize;
                if var > variable_count {
                    return Err(Error::BadParameter(format!(
                        "literal {literal} references variable {var} > {variable_count}"
                    )));
                }
                *slot = var;
            }
            if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
                return Err(Error::BadParameter(format!(
                    "clause {clause:?} repeats a variable; three distinct variables required"
                )));
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }
}

/// Desk-scale satisfiability check by enumerating all assignments.
pub fn brute_force_satisfiable(cnf: &CnfFormula) -> bool {
    let p = cnf.variable_count;
    (0u64..1 << p).any(|bits| {
        cnf.clauses.iter().all(|clause| {
            clause.iter().any(|&literal| {
                let var = literal.unsigned_abs() as usize;
                let value = bits >> (var - 1) & 1 == 1;
                (literal > 0) == value
            })
        })
    })
}

/// Builds `3m` templates of width `p + 2m`: for clause `i`, three templates
/// that each pin one literal's variable position to the literal's polarity,
/// plus a per-clause suffix block at positions `p + 2i - 1, p + 2i` set to
/// `00`, `01`, `10` so that at most one of the three can match any string.
/// Template order is clause order, then literal order.
pub fn templates_from_3sat(cnf: &CnfFormula) -> TemplateSet {
    let p = cnf.variable_count;
    let m = cnf.clause_count();
    let width = p + 2 * m;
    let suffix_codes = ["00", "01", "10"];
    let mut templates = Vec::with_capacity(3 * m);
    for (i, clause) in cnf.clauses.iter().enumerate() {
        for (j, &literal) in clause.iter().enumerate() {
            let mut symbols = vec![b'*'; width];
            let var = literal.unsigned_abs() as usize;
            symbols[var - 1] = if literal > 0 { b'1' } else { b'0' };
            let block = p + 2 * i;
            symbols[block] = suffix_codes[j].as_bytes()[0];
            symbols[block + 1] = suffix_codes[j].as_bytes()[1];
            templates.push(String::from_utf8(symbols).expect("ascii symbols"));
        }
    }
    TemplateSet { width, templates }
}

/// Whether the bitstring matches the template: every non-wildcard position
/// agrees.
pub fn matches(template: &str, bitstring: &str) -> Result<bool> {
    if template.len() != bitstring.len() {
        return Err(Error::WidthMismatch {
            expected: template.len(),
            actual: bitstring.len(),
        });
    }
    Ok(template
        .bytes()
        .zip(bitstring.bytes())
        .all(|(t, b)| t == b'*' || t == b))
}

/// How many templates of the set the bitstring matches.
pub fn count_matches(ts: &TemplateSet, bitstring: &str) -> Result<usize> {
    if bitstring.len() != ts.width {
        return Err(Error::WidthMismatch {
            expected: ts.width,
            actual: bitstring.len(),
        });
    }
    let mut count = 0;
    for t in &ts.templates {
        if matches(t, bitstring)? {
            count += 1;
        }
    }
    Ok(count)
}

/// The constructed network together with the bit-position correspondence.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionArtifact {
    pub network: Network,
    /// Per bit position, the (bit-one edge id, bit-zero edge id) pair.
    pub bit_to_edges: Vec<(String, String)>,
    pub template_count: usize,
}

/// Builds the line network of a template set: `n + 1` vertices in a row,
/// one hidden state per template with a uniform prior, and per bit position
/// a parallel edge pair. Under state `j`, the bit-one edge survives iff the
/// template's symbol there is `1` or `*`, and the bit-zero edge iff it is
/// `0` or `*`: a wildcard constrains neither edge.
pub fn network_from_templates(ts: &TemplateSet) -> Result<ReductionArtifact> {
    if ts.is_empty() {
        return Err(Error::BadParameter(
            "template set must contain at least one template".into(),
        ));
    }
    if ts.width == 0 {
        return Err(Error::BadParameter(
            "template width must be at least one".into(),
        ));
    }
    let n = ts.width;
    let d = ts.len();
    let vertices: Vec<String> = (1..=n + 1).map(|i| format!("n{i}")).collect();
    let mut edges = Vec::with_capacity(2 * n);
    let mut bit_to_edges = Vec::with_capacity(n);
    let symbols: Vec<&[u8]> = ts.templates.iter().map(|t| t.as_bytes()).collect();
    for i in 0..n {
        let one_id = format!("e{}_1", i + 1);
        let zero_id = format!("e{}_0", i + 1);
        let one_rel: Vec<f64> = symbols
            .iter()
            .map(|t| if matches!(t[i], b'1' | b'*') { 1.0 } else { 0.0 })
            .collect();
        let zero_rel: Vec<f64> = symbols
            .iter()
            .map(|t| if matches!(t[i], b'0' | b'*') { 1.0 } else { 0.0 })
            .collect();
        edges.push(Edge::new(
            one_id.clone(),
            format!("n{}", i + 1),
            format!("n{}", i + 2),
            one_rel,
        ));
        edges.push(Edge::new(
            zero_id.clone(),
            format!("n{}", i + 1),
            format!("n{}", i + 2),
            zero_rel,
        ));
        bit_to_edges.push((one_id, zero_id));
    }
    let network = Network::new(
        d,
        vec![1.0 / d as f64; d],
        vertices,
        "n1",
        format!("n{}", n + 1),
        edges,
    );
    Ok(ReductionArtifact {
        network,
        bit_to_edges,
        template_count: d,
    })
}

impl ReductionArtifact {
    /// The bitstring a path spells: bit `i` is 1 iff the path takes the
    /// bit-one edge of position `i`.
    pub fn path_to_bitstring(&self, path: &Path) -> Result<String> {
        self.network.check_path(path)?;
        let mut bits = String::with_capacity(self.bit_to_edges.len());
        for (id, (one_id, zero_id)) in path.edge_ids.iter().zip(&self.bit_to_edges) {
            if id == one_id {
                bits.push('1');
            } else if id == zero_id {
                bits.push('0');
            } else {
                return Err(Error::InvalidPath(format!(
                    "edge `{id}` is not one of position's pair `{one_id}`/`{zero_id}`"
                )));
            }
        }
        Ok(bits)
    }

    /// The path spelling a bitstring; exact inverse of
    /// [`Self::path_to_bitstring`].
    pub fn bitstring_to_path(&self, bitstring: &str) -> Result<Path> {
        if bitstring.len() != self.bit_to_edges.len() {
            return Err(Error::WidthMismatch {
                expected: self.bit_to_edges.len(),
                actual: bitstring.len(),
            });
        }
        let mut edge_ids = Vec::with_capacity(bitstring.len());
        for (bit, (one_id, zero_id)) in bitstring.bytes().zip(&self.bit_to_edges) {
            match bit {
                b'1' => edge_ids.push(one_id.clone()),
                b'0' => edge_ids.push(zero_id.clone()),
                other => {
                    return Err(Error::BadParameter(format!(
                        "bitstring may only contain 0 and 1, got `{}`",
                        other as char
                    )))
                }
            }
        }
        Ok(Path { edge_ids })
    }

    /// Sum of conditional path reliabilities, which equals `d` times the
    /// path's marginal reliability under the uniform prior and is an exact
    /// small-integer float here (every conditional reliability is 0 or 1).
    pub fn scaled_reliability(&self, path: &Path) -> Result<f64> {
        let mut total = 0.0;
        for state in 0..self.network.state_count {
            total += self.network.conditional_path_reliability(path, state)?;
        }
        Ok(total)
    }
}

/// All bitstrings of the given width, in numeric order. Desk-scale helper
/// for the correspondence checks.
pub fn all_bitstrings(width: usize) -> impl Iterator<Item = String> {
    assert!(width < 26, "2^width strings would not be desk-scale");
    (0u64..1 << width).map(move |value| {
        (0..width)
            .map(|i| {
                if value >> (width - 1 - i) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    })
}

/// Random well-formed 3-CNF generator for the correspondence tests.
pub fn random_cnf(seed: u64, variable_count: usize, clause_count: usize) -> CnfFormula {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    assert!(variable_count >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses = Vec::with_capacity(clause_count);
    for _ in 0..clause_count {
        let mut vars: Vec<i32> = (1..=variable_count as i32).collect();
        vars.shuffle(&mut rng);
        let mut clause = [0i32; 3];
        for (slot, &var) in clause.iter_mut().zip(&vars[..3]) {
            *slot = if rng.random_bool(0.5) { var } else { -var };
        }
        clauses.push(clause);
    }
    CnfFormula::new(variable_count, clauses).expect("construction is well-formed")
}

/// Used by tests: a HashMap from edge id to its bit position and polarity.
#[allow(dead_code)]
pub(crate) fn edge_roles(art: &ReductionArtifact) -> HashMap<&str, (usize, bool)> {
    let mut roles = HashMap::new();
    for (i, (one_id, zero_id)) in art.bit_to_edges.iter().enumerate() {
        roles.insert(one_id.as_str(), (i, true));
        roles.insert(zero_id.as_str(), (i, false));
    }
    roles
}
