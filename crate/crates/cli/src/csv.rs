//! CSV rendering and parsing of sweep curves.
//!
//! Layout (the contract for external plotting tools):
//!
//! ```text
//! # model=<qnd|werner> param=<r|p|b1>:<value> working_b1=<value> convention=<paper|strict>
//! L,chain_b1,m,M,converged,growth_class
//! ```
//!
//! Floats carry 17 significant digits, so a parsed file reconstructs the
//! curve bit-exactly.

use onpp_core::{ChainConvention, Error, Result, SweepCurve, SweepModel, SweepPoint};

use crate::{g17, ParamKind};

pub const HEADER_COLUMNS: &str = "L,chain_b1,m,M,converged,growth_class";

/// A curve together with the echoed input parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepDocument {
    pub curve: SweepCurve,
    pub param_kind: ParamKind,
    pub param_value: f64,
}

pub fn render(doc: &SweepDocument) -> String {
    let curve = &doc.curve;
    let mut out = String::new();
    out.push_str(&format!(
        "# model={} param={}:{} working_b1={} convention={}\n",
        curve.model.label(),
        doc.param_kind.label(),
        g17(doc.param_value),
        g17(curve.working_b1),
        curve.convention.label(),
    ));
    out.push_str(HEADER_COLUMNS);
    out.push('\n');
    for (i, p) in curve.points.iter().enumerate() {
        let class = curve
            .growth_class_at(i)
            .map(|c| c.label())
            .unwrap_or("na");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.l,
            g17(p.chain_b1),
            p.rounds_m,
            p.pairs,
            p.converged,
            class
        ));
    }
    out
}

fn malformed(what: &str) -> Error {
    Error::Parse {
        name: "sweep CSV",
        got: what.to_string(),
        expected: "the sweep CSV layout",
    }
}

/// Parses a file produced by [`render`] back into the curve it came from.
pub fn parse(text: &str) -> Result<SweepDocument> {
    let mut lines = text.lines();
    let meta = lines.next().ok_or_else(|| malformed("empty file"))?;
    let meta = meta
        .strip_prefix("# ")
        .ok_or_else(|| malformed("missing metadata line"))?;

    let mut model = None;
    let mut param = None;
    let mut working_b1 = None;
    let mut convention = None;
    for field in meta.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| malformed("metadata field without '='"))?;
        match key {
            "model" => model = Some(value.parse::<SweepModel>()?),
            "param" => {
                let (kind, value) = value
                    .split_once(':')
                    .ok_or_else(|| malformed("param field without ':'"))?;
                let value: f64 = value.parse().map_err(|_| malformed("param value"))?;
                param = Some((kind.parse::<ParamKind>()?, value));
            }
            "working_b1" => {
                working_b1 = Some(value.parse::<f64>().map_err(|_| malformed("working_b1"))?)
            }
            "convention" => convention = Some(value.parse::<ChainConvention>()?),
            _ => return Err(malformed("unknown metadata key")),
        }
    }
    let (model, (param_kind, param_value), working_b1, convention) = match
        (model, param, working_b1, convention)
    {
        (Some(m), Some(p), Some(w), Some(c)) => (m, p, w, c),
        _ => return Err(malformed("incomplete metadata")),
    };

    let columns = lines.next().ok_or_else(|| malformed("missing column header"))?;
    if columns != HEADER_COLUMNS {
        return Err(malformed("unexpected column header"));
    }

    let mut points = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(malformed("row does not have 6 fields"));
        }
        points.push(SweepPoint {
            l: fields[0].parse().map_err(|_| malformed("L"))?,
            chain_b1: fields[1].parse().map_err(|_| malformed("chain_b1"))?,
            rounds_m: fields[2].parse().map_err(|_| malformed("m"))?,
            pairs: fields[3].parse().map_err(|_| malformed("M"))?,
            converged: fields[4].parse().map_err(|_| malformed("converged"))?,
        });
    }

    Ok(SweepDocument {
        curve: SweepCurve {
            model,
            working_b1,
            convention,
            points,
        },
        param_kind,
        param_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use onpp_core::planner::sweep_m_of_l;

    #[test]
    fn round_trip_reconstructs_curve_exactly() {
        let ls: Vec<u32> = (1..=25).collect();
        let curve =
            sweep_m_of_l(SweepModel::Werner, 0.9625, &ls, ChainConvention::Paper).unwrap();
        let doc = SweepDocument {
            curve,
            param_kind: ParamKind::P,
            param_value: 0.95,
        };
        let text = render(&doc);
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed, doc);
    }

    #[test]
    fn rendering_is_deterministic() {
        let ls: Vec<u32> = (1..=10).collect();
        let curve = sweep_m_of_l(SweepModel::Qnd, 0.9925, &ls, ChainConvention::Paper).unwrap();
        let doc = SweepDocument {
            curve,
            param_kind: ParamKind::R,
            param_value: 0.985,
        };
        assert_eq!(render(&doc), render(&doc));
    }

    #[test]
    fn parse_rejects_damage() {
        assert!(parse("").is_err());
        assert!(parse("no metadata\n").is_err());
        let ls = [1, 2, 3];
        let doc = SweepDocument {
            curve: sweep_m_of_l(SweepModel::Qnd, 0.99, &ls, ChainConvention::Paper).unwrap(),
            param_kind: ParamKind::B1,
            param_value: 0.99,
        };
        let text = render(&doc).replace("L,chain_b1", "X,chain_b1");
        assert!(parse(&text).is_err());
    }
}
