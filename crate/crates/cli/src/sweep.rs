//! `start:stop:step` parameter sweeps.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

const MAX_POINTS: usize = 10_000_000;

/// A single value or an inclusive arithmetic progression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sweep {
    Value(f64),
    Range { start: f64, stop: f64, step: f64 },
}

impl Sweep {
    /// Points `start + i·step` below `stop + step/2`, ascending.
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Sweep::Value(v) => vec![v],
            Sweep::Range { start, stop, step } => {
                let n = ((stop - start) / step + 0.5).ceil() as usize;
                (0..n).map(|i| start + i as f64 * step).collect()
            }
        }
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| -> Result<f64, String> {
            let v: f64 = t.trim().parse().map_err(|_| format!("'{t}' is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("'{t}' is not finite"))
            }
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Sweep::Value(num(v)?)),
            [a, b, c] => {
                let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
                if step <= 0.0 {
                    return Err(format!("sweep step must be positive, got {step}"));
                }
                if stop < start {
                    return Err(format!("sweep is empty: stop {stop} < start {start}"));
                }
                if (stop - start) / step > MAX_POINTS as f64 {
                    return Err(format!("sweep has more than {MAX_POINTS} points"));
                }
                Ok(Sweep::Range { start, stop, step })
            }
            _ => Err(format!("expected a number or start:stop:step, got '{s}'")),
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sweep::Value(v) => write!(f, "{v}"),
            Sweep::Range { start, stop, step } => write!(f, "{start}:{stop}:{step}"),
        }
    }
}

impl Serialize for Sweep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Sweep::Value(v) => s.serialize_f64(*v),
            Sweep::Range { .. } => s.serialize_str(&self.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_values_and_ranges() {
        assert_eq!("3".parse::<Sweep>().unwrap().values(), vec![3.0]);
        let v = "0.1:10:0.01".parse::<Sweep>().unwrap().values();
        assert_eq!(v.len(), 991);
        assert!((v[990] - 10.0).abs() < 1e-12);
        assert_eq!("0:1:0.3".parse::<Sweep>().unwrap().values().len(), 4);
        assert_eq!("0:1:0.4".parse::<Sweep>().unwrap().values().len(), 3);
        assert_eq!("2:2:1".parse::<Sweep>().unwrap().values(), vec![2.0]);
    }

    #[test]
    fn rejects_bad_sweeps() {
        for s in ["", "a", "1:2", "0:1:0", "0:1:-1", "2:1:0.1", "nan", "0:inf:1", "1:2:3:4"] {
            assert!(s.parse::<Sweep>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_round_trips() {
        let s: Sweep = "0.2:10:0.05".parse().unwrap();
        assert_eq!(s.to_string().parse::<Sweep>().unwrap(), s);
    }
}
