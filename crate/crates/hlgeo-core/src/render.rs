//! Text rendering of exact values, shared by reports, ledgers and the CLI.

use num_traits::{One, Signed, Zero};

use crate::linalg::Vector;
use crate::scalar::{format_rational, Rational};

/// Renders a vector as a signed combination of basis labels, positive terms
/// first, e.g. `2*E6 - 2*E3`, `E5`, `-E1`, `0`.
pub fn format_combination(v: &Vector<Rational>, labels: &[String]) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for positive in [true, false] {
        for i in 0..v.dim() {
            let c = &v[i];
            if c.is_zero() || c.is_positive() != positive {
                continue;
            }
            let mag = c.abs();
            let term = if mag.is_one() {
                labels[i].clone()
            } else {
                format!("{}*{}", format_rational(&mag), labels[i])
            };
            terms.push((positive, term));
        }
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (positive, term)) in terms.iter().enumerate() {
        if idx == 0 {
            if !positive {
                out.push('-');
            }
        } else {
            out.push_str(if *positive { " + " } else { " - " });
        }
        out.push_str(term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    fn labels() -> Vec<String> {
        (1..=6).map(|i| format!("E{i}")).collect()
    }

    #[test]
    fn combination_rendering() {
        let v = Vector::new(vec![
            rint(0),
            rint(0),
            rint(-2),
            rint(0),
            rint(0),
            rint(2),
        ]);
        assert_eq!(format_combination(&v, &labels()), "2*E6 - 2*E3");

        let v = Vector::new(vec![rint(0); 6]);
        assert_eq!(format_combination(&v, &labels()), "0");

        let v = Vector::new(vec![rint(-1), rint(0), rint(0), rint(0), rat(1, 2), rint(0)]);
        assert_eq!(format_combination(&v, &labels()), "1/2*E5 - E1");

        let v = Vector::new(vec![rint(0), rint(1), rint(0), rint(0), rint(0), rint(0)]);
        assert_eq!(format_combination(&v, &labels()), "E2");
    }
}
