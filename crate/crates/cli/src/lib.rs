//! Serialization of sweep curves (CSV and JSON) and the switcher-range
//! syntax shared by the binary and its tests.

pub mod csv;
pub mod json;

use onpp_core::Error;

/// Formats a float with 17 significant digits so that re-parsing
/// reconstructs the exact bit pattern.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Inclusive switcher range `start..end[..step]`, also accepting a single
/// value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LRange {
    pub start: u32,
    pub end: u32,
    pub step: u32,
}

impl LRange {
    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.end).step_by(self.step as usize).collect()
    }
}

impl std::str::FromStr for LRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse {
            name: "l range",
            got: s.to_string(),
            expected: "START..END[..STEP] with START <= END and STEP >= 1",
        };
        let parts: Vec<&str> = s.split("..").collect();
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        let (start, end, step) = match parts.as_slice() {
            [single] => {
                let v = parse(single)?;
                (v, v, 1)
            }
            [start, end] => (parse(start)?, parse(end)?, 1),
            [start, end, step] => (parse(start)?, parse(end)?, parse(step)?),
            _ => return Err(bad()),
        };
        if step == 0 || start > end {
            return Err(bad());
        }
        Ok(LRange { start, end, step })
    }
}

/// Which native parameter the user supplied; echoed in output metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    R,
    P,
    B1,
}

impl ParamKind {
    pub fn label(self) -> &'static str {
        match self {
            ParamKind::R => "r",
            ParamKind::P => "p",
            ParamKind::B1 => "b1",
        }
    }
}

impl std::str::FromStr for ParamKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "r" => Ok(ParamKind::R),
            "p" => Ok(ParamKind::P),
            "b1" => Ok(ParamKind::B1),
            _ => Err(Error::Parse {
                name: "param kind",
                got: s.to_string(),
                expected: "r|p|b1",
            }),
        }
    }
}
