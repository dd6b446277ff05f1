//! Line-oriented circuit text format.
//!
//! One gate per line, `KIND lo hi angle...`:
//!
//! ```text
//! RX 0 1 1.25267948966
//! RION 0 1 0 2.553589793
//! RZ 1 2 -0.5
//! ```
//!
//! Kinds are `RX`, `RY`, `RZ` (one angle), `RION` (φ then θ) and `PHASE2`
//! (λ). Blank lines and `#` comments are ignored. Angles are written with the
//! shortest representation that parses back to the same `f64`.

use std::fmt::Write as _;

use super::{Circuit, Gate, Subspace};
use crate::{Error, Result};

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::CircuitParse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let kind = fields[0].to_ascii_uppercase();
        let n_angles = match kind.as_str() {
            "RX" | "RY" | "RZ" | "PHASE2" => 1,
            "RION" => 2,
            other => return Err(err(format!("unknown gate kind `{other}`"))),
        };
        if fields.len() != 3 + n_angles {
            return Err(err(format!(
                "`{kind}` takes 2 level indices and {n_angles} angle(s), got {} field(s)",
                fields.len() - 1
            )));
        }
        let level = |s: &str| s.parse::<usize>().map_err(|e| err(format!("bad level `{s}`: {e}")));
        let sub = Subspace::new(level(fields[1])?, level(fields[2])?)
            .map_err(|e| err(e.to_string()))?;
        let mut angles = Vec::with_capacity(n_angles);
        for s in &fields[3..] {
            let v: f64 = s.parse().map_err(|e| err(format!("bad angle `{s}`: {e}")))?;
            if !v.is_finite() {
                return Err(err(format!("angle `{s}` is not finite")));
            }
            angles.push(v);
        }
        gates.push(match kind.as_str() {
            "RX" => Gate::Rx { sub, theta: angles[0] },
            "RY" => Gate::Ry { sub, theta: angles[0] },
            "RZ" => Gate::Rz { sub, phi: angles[0] },
            "PHASE2" => Gate::Phase2 { sub, lambda: angles[0] },
            _ => Gate::RIon { sub, phi: angles[0], theta: angles[1] },
        });
    }
    Ok(Circuit::new(gates))
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    for g in c.gates() {
        let _ = match *g {
            Gate::Rx { sub, theta } => writeln!(out, "RX {sub} {theta}"),
            Gate::Ry { sub, theta } => writeln!(out, "RY {sub} {theta}"),
            Gate::Rz { sub, phi } => writeln!(out, "RZ {sub} {phi}"),
            Gate::RIon { sub, phi, theta } => writeln!(out, "RION {sub} {phi} {theta}"),
            Gate::Phase2 { sub, lambda } => writeln!(out, "PHASE2 {sub} {lambda}"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_documented_examples() {
        let c = parse_circuit("RX 0 1 1.25\nRION 0 1 0.0 2.5\n\n# comment\nRZ 1 2 -0.5\n").unwrap();
        assert_eq!(
            c.gates(),
            &[Gate::rx(0, 1, 1.25), Gate::r_ion(0, 1, 0.0, 2.5), Gate::rz(1, 2, -0.5)]
        );
    }

    #[test]
    fn empty_text_is_empty_circuit() {
        assert!(parse_circuit("").unwrap().is_empty());
        assert_eq!(write_circuit(&Circuit::default()), "");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_circuit("RX 0 1 0.1\nRQ 0 1 0.2\n").unwrap_err();
        assert!(matches!(e, Error::CircuitParse { line: 2, .. }));
        let e = parse_circuit("RX 0 1\n").unwrap_err();
        assert!(matches!(e, Error::CircuitParse { line: 1, .. }));
        let e = parse_circuit("\n\nRZ 2 1 0.3").unwrap_err();
        assert!(matches!(e, Error::CircuitParse { line: 3, .. }));
        assert!(parse_circuit("RX 0 1 NaN").is_err());
    }

    fn any_gate() -> impl Strategy<Value = Gate> {
        let sub = prop_oneof![Just(Subspace::S01), Just(Subspace::S02), Just(Subspace::S12)];
        let angle = -1e3f64..1e3;
        (0..5u8, sub, angle.clone(), angle).prop_map(|(k, sub, a, b)| match k {
            0 => Gate::Rx { sub, theta: a },
            1 => Gate::Ry { sub, theta: a },
            2 => Gate::Rz { sub, phi: a },
            3 => Gate::RIon { sub, phi: a, theta: b },
            _ => Gate::Phase2 { sub, lambda: a },
        })
    }

    proptest! {
        #[test]
        fn text_roundtrip_is_bit_exact(gates in proptest::collection::vec(any_gate(), 0..20)) {
            let c = Circuit::new(gates);
            prop_assert_eq!(parse_circuit(&write_circuit(&c)).unwrap(), c);
        }
    }
}
