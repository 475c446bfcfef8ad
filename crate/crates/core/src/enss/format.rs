//! Certificate text format, fixed field order:
//!
//! ```text
//! dimension: 7
//! highest_weight: 1 1 0 0 0 0 0      # optional
//! generators:
//! 1 1 0 0 0 0 0
//! ...
//! witness: 1 1 1 0 0 0 0
//! cone_combination: 0:1/2 1:1/2 2:1/2
//! lattice_combination: 1:2 3:-1 4:-1 5:-1 6:-1
//! disc_fn: -2 5 5 -2 -2 -2 -2        # optional
//! provenance: example-1 (7,2)
//! ```
//!
//! Generator indices are 0-based positions in the listed order; integers
//! and rationals are decimal; `#` starts a comment.



use crate::error::ParseError;
use crate::rat::{format_rat, parse_rat, Rat};
use crate::weights::QuasiWeight;

use super::{DiscriminatingFunction, EnssCertificate};

pub fn format_certificate(cert: &EnssCertificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("dimension: {}\n", cert.n()));
    if let Some(h) = cert.highest() {
        out.push_str(&format!("highest_weight: {h}\n"));
    }
    out.push_str("generators:\n");
    for g in cert.generators() {
        out.push_str(&format!("{g}\n"));
    }
    out.push_str(&format!("witness: {}\n", cert.witness()));
    out.push_str(&format!("cone_combination: {}\n", cert.cone_combo()));
    out.push_str(&format!("lattice_combination: {}\n", cert.lattice_combo()));
    if let Some(f) = cert.disc_fn() {
        let coeffs: Vec<String> = f.coeffs().iter().map(format_rat).collect();
        out.push_str(&format!("disc_fn: {}\n", coeffs.join(" ")));
    }
    out.push_str(&format!("provenance: {}\n", cert.provenance()));
    out
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    peeked: Option<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
            peeked: None,
        }
    }

    /// Next meaningful line (1-based number, comment-stripped, trimmed).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        if let Some(p) = self.peeked.take() {
            return Some(p);
        }
        for (i, raw) in self.iter.by_ref() {
            let line = match raw.split_once('#') {
                Some((head, _)) => head,
                None => raw,
            }
            .trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        if self.peeked.is_none() {
            self.peeked = self.next();
        }
        self.peeked
    }
}

fn expect_field<'a>(
    lines: &mut Lines<'a>,
    field: &'static str,
) -> Result<(usize, &'a str), ParseError> {
    let (no, line) = lines.next().ok_or(ParseError::MissingField(field))?;
    let Some(rest) = line.strip_prefix(field) else {
        return Err(ParseError::at(
            no,
            format!("expected field `{field}`, found `{line}`"),
        ));
    };
    let Some(rest) = rest.strip_prefix(':') else {
        return Err(ParseError::at(no, format!("missing `:` after `{field}`")));
    };
    Ok((no, rest.trim()))
}

fn parse_weight(no: usize, s: &str) -> Result<QuasiWeight, ParseError> {
    QuasiWeight::parse(s).map_err(|e| ParseError::at(no, e))
}

fn parse_terms(
    no: usize,
    field: &'static str,
    s: &str,
    integer_only: bool,
) -> Result<Vec<(usize, Rat)>, ParseError> {
    let mut terms = Vec::new();
    for tok in s.split_whitespace() {
        let Some((idx, coeff)) = tok.split_once(':') else {
            return Err(ParseError::at(
                no,
                format!("{field}: term `{tok}` is not `index:coefficient`"),
            ));
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| ParseError::at(no, format!("{field}: bad index `{idx}`")))?;
        let coeff = parse_rat(coeff).map_err(|e| ParseError::at(no, format!("{field}: {e}")))?;
        if integer_only && !coeff.is_integer() {
            return Err(ParseError::at(
                no,
                format!(
                    "{field}: coefficient `{}` must be an integer",
                    format_rat(&coeff)
                ),
            ));
        }
        terms.push((idx, coeff));
    }
    Ok(terms)
}

/// Parses the certificate document. Structure only; run `verify` on the
/// result for the semantic checks.
pub fn parse_certificate(text: &str) -> Result<EnssCertificate, ParseError> {
    let mut lines = Lines::new(text);
    let (no, dim) = expect_field(&mut lines, "dimension")?;
    let n: usize = dim
        .parse()
        .map_err(|_| ParseError::at(no, format!("bad dimension `{dim}`")))?;

    let highest = match lines.peek() {
        Some((no, line)) if line.starts_with("highest_weight") => {
            let (no2, rest) = expect_field(&mut lines, "highest_weight")?;
            debug_assert_eq!(no, no2);
            Some(parse_weight(no2, rest)?)
        }
        _ => None,
    };

    let (_, gen_header) = expect_field(&mut lines, "generators")?;
    if !gen_header.is_empty() {
        return Err(ParseError::MissingField("generators"));
    }
    let mut generators = Vec::new();
    loop {
        match lines.peek() {
            Some((_, line)) if !line.starts_with("witness") => {
                let (no, line) = lines.next().unwrap();
                generators.push(parse_weight(no, line)?);
            }
            _ => break,
        }
    }

    let (no, w) = expect_field(&mut lines, "witness")?;
    let witness = parse_weight(no, w)?;
    let (no, cone) = expect_field(&mut lines, "cone_combination")?;
    let cone_terms = parse_terms(no, "cone_combination", cone, false)?;
    let (no, lat) = expect_field(&mut lines, "lattice_combination")?;
    let lattice_terms = parse_terms(no, "lattice_combination", lat, true)?;

    let disc_fn = match lines.peek() {
        Some((_, line)) if line.starts_with("disc_fn") => {
            let (no, rest) = expect_field(&mut lines, "disc_fn")?;
            let coeffs: Vec<Rat> = rest
                .split_whitespace()
                .map(parse_rat)
                .collect::<Result<_, _>>()
                .map_err(|e| ParseError::at(no, format!("disc_fn: {e}")))?;
            if coeffs.len() != n {
                return Err(ParseError::at(
                    no,
                    format!("disc_fn: expected {n} coefficients, got {}", coeffs.len()),
                ));
            }
            Some(
                DiscriminatingFunction::new(coeffs)
                    .map_err(|e| ParseError::at(no, e.to_string()))?,
            )
        }
        _ => None,
    };

    let (no, prov) = expect_field(&mut lines, "provenance")?;
    let provenance = prov.to_string();

    EnssCertificate::new_unverified(
        n,
        highest,
        generators,
        witness,
        cone_terms,
        lattice_terms,
        disc_fn,
        provenance,
    )
    .map_err(|e| ParseError::at(no, e.to_string()))
}
