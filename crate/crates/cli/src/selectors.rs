//! Mini-syntax used by CLI flags.
//!
//! * module selector: `regular` or `simple:<vertex>` (vertex by declared
//!   name, or 1-based position as a fallback);
//! * projective selector: `regular` or `proj:<v>[,<v>...]` (direct sum of
//!   the `e_vA`);
//! * element expressions: `[coeff] f1*f2*... ± ...` where each factor is a
//!   basis label (`e_1`, an arrow name, or a longer normal-form path label)
//!   and coefficients are integers or fractions `n/d`;
//! * endomorphism spec: `l:<element>` (left multiplication) or
//!   `hom:c1,c2,...` (an integer combination of the canonical basis of the
//!   endomorphism space);
//! * complex spec: `stalk:regular` or `twoterm:l:<element>` (the two-term
//!   complex `A → A` in degrees 0, 1 with the given left multiplication
//!   as differential).

use std::sync::Arc;

use hstrace_core::algebra::{Algebra, AlgebraElement};
use hstrace_core::exactlin::Scalar;

pub fn find_vertex(algebra: &Algebra, selector: &str) -> Result<usize, String> {
    if let Some(i) = algebra.vertex_names().iter().position(|v| v == selector) {
        return Ok(i);
    }
    if let Ok(n) = selector.parse::<usize>() {
        if n >= 1 && n <= algebra.num_vertices() {
            return Ok(n - 1);
        }
    }
    Err(format!(
        "unknown vertex `{selector}` (declared: {:?})",
        algebra.vertex_names()
    ))
}

/// Parse an algebra element expression.
pub fn parse_element(algebra: &Arc<Algebra>, text: &str) -> Result<AlgebraElement, String> {
    let field = algebra.field().clone();
    let mut acc = algebra.zero_elem();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err("empty element expression".into());
    }
    let mut negative = rest.starts_with('-');
    if negative || rest.starts_with('+') {
        rest = rest[1..].trim_start();
    }
    loop {
        let term_end = rest
            .char_indices()
            .find(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let term = rest[..term_end].trim();
        if term.is_empty() {
            return Err("empty term in element expression".into());
        }
        let (coeff, path) = split_coefficient(term, &field)?;
        let mut value = path_value(algebra, path)?;
        let c = if negative { coeff.neg() } else { coeff };
        for (k, entry) in value.iter_mut().enumerate() {
            acc[k] = &acc[k] + &(&c * entry);
        }
        if term_end == rest.len() {
            break;
        }
        negative = rest.as_bytes()[term_end] == b'-';
        rest = rest[term_end + 1..].trim_start();
    }
    Ok(acc)
}

fn split_coefficient<'a>(
    term: &'a str,
    field: &hstrace_core::exactlin::FieldSpec,
) -> Result<(Scalar, &'a str), String> {
    let mut parts = term.splitn(2, char::is_whitespace);
    let first = parts.next().unwrap();
    let rest = parts.next().map(str::trim).unwrap_or("");
    let numeric = first
        .chars()
        .all(|c| c.is_ascii_digit() || c == '/');
    if numeric && !rest.is_empty() {
        let coeff = if let Some((n, d)) = first.split_once('/') {
            let n: i64 = n.parse().map_err(|_| format!("bad coefficient `{first}`"))?;
            let d: i64 = d.parse().map_err(|_| format!("bad coefficient `{first}`"))?;
            Scalar::from_fraction(n, d, field).map_err(|e| e.to_string())?
        } else {
            let n: i64 = first.parse().map_err(|_| format!("bad coefficient `{first}`"))?;
            Scalar::from_integer(n, field)
        };
        Ok((coeff, rest))
    } else {
        Ok((Scalar::one(field), term))
    }
}

fn path_value(algebra: &Arc<Algebra>, path: &str) -> Result<AlgebraElement, String> {
    let mut value = algebra.unit().clone();
    for factor in path.split('*') {
        let factor = factor.trim();
        let idx = algebra
            .label_index(factor)
            .ok_or_else(|| format!("unknown basis label `{factor}`"))?;
        value = algebra.mul_elems(&value, &algebra.basis_elem(idx));
    }
    Ok(value)
}

/// `regular` or `proj:v1,v2,...` into a summand list for `realize_sum`
/// (`None` means the regular module).
pub fn parse_projective_selector(
    algebra: &Algebra,
    selector: &str,
) -> Result<Option<Vec<usize>>, String> {
    if selector == "regular" {
        return Ok(None);
    }
    if let Some(rest) = selector.strip_prefix("proj:") {
        let mut summands = Vec::new();
        for part in rest.split(',') {
            summands.push(find_vertex(algebra, part.trim())?);
        }
        if summands.is_empty() {
            return Err("empty projective selector".into());
        }
        return Ok(Some(summands));
    }
    Err(format!("unknown projective selector `{selector}` (use regular or proj:<v>,...)"))
}
