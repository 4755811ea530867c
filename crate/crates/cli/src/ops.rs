//! The `--op` mini-language of the `transform` subcommand.

use std::fmt;
use std::str::FromStr;

use ibn_core::transforms;
use ibn_core::{Error, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    CohnCover,
    SourceFreeForm,
    SourceFreeEquivalent,
    AttachHead(String, u64),
    AttachStar(String, u64),
    Subdivide(String, u64),
    Collapse(Vec<String>),
    Eliminate(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpParseError(String);

impl fmt::Display for OpParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for OpParseError {}

fn name_and_count(op: &str, arg: &str) -> Result<(String, u64), OpParseError> {
    let bad = || OpParseError(format!("`{op}` expects NAME,COUNT, got `{arg}`"));
    let (name, n) = arg.split_once(',').ok_or_else(bad)?;
    let n = n.trim().parse().map_err(|_| bad())?;
    Ok((name.trim().to_string(), n))
}

impl FromStr for Op {
    type Err = OpParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (op, arg) = match s.split_once(':') {
            Some((op, arg)) => (op, Some(arg)),
            None => (s, None),
        };
        match (op, arg) {
            ("cohn-cover", None) => Ok(Op::CohnCover),
            ("source-free-form", None) => Ok(Op::SourceFreeForm),
            ("source-free-equivalent", None) => Ok(Op::SourceFreeEquivalent),
            ("attach-head", Some(a)) => name_and_count(op, a).map(|(v, n)| Op::AttachHead(v, n)),
            ("attach-star", Some(a)) => name_and_count(op, a).map(|(v, n)| Op::AttachStar(v, n)),
            ("subdivide", Some(a)) => name_and_count(op, a).map(|(e, n)| Op::Subdivide(e, n)),
            ("collapse", Some(a)) => Ok(Op::Collapse(
                a.split('+').map(|v| v.trim().to_string()).collect(),
            )),
            ("eliminate", Some(a)) => Ok(Op::Eliminate(a.trim().to_string())),
            _ => Err(OpParseError(format!(
                "unknown transform `{s}`; expected one of cohn-cover, source-free-form, \
                 source-free-equivalent, attach-head:V,N, attach-star:V,N, subdivide:E,N, \
                 collapse:V1+V2+..., eliminate:V"
            ))),
        }
    }
}

/// The transformed graph; `None` only for `source-free-equivalent` on a
/// graph where an isolated vertex appears during source elimination.
pub fn apply(op: &Op, g: &Graph) -> Result<Option<Graph>, Error> {
    let graph = match op {
        Op::CohnCover => transforms::cohn_cover(g),
        Op::SourceFreeForm => transforms::source_free_form(g)?.result,
        Op::SourceFreeEquivalent => return transforms::source_free_equivalent(g),
        Op::AttachHead(v, n) => transforms::attach_head(g, v, *n)?,
        Op::AttachStar(v, n) => transforms::attach_star(g, v, *n)?,
        Op::Subdivide(e, n) => transforms::subdivide_edge(g, e, *n)?,
        Op::Collapse(set) => transforms::hereditary_collapse(g, set)?,
        Op::Eliminate(v) => transforms::source_eliminate(g, v)?,
    };
    Ok(Some(graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ops() {
        assert_eq!("cohn-cover".parse(), Ok(Op::CohnCover));
        assert_eq!(
            "attach-head:v0,2".parse(),
            Ok(Op::AttachHead("v0".into(), 2))
        );
        assert_eq!("subdivide:e0,1".parse(), Ok(Op::Subdivide("e0".into(), 1)));
        assert_eq!(
            "collapse:v0+v".parse(),
            Ok(Op::Collapse(vec!["v0".into(), "v".into()]))
        );
        assert_eq!("eliminate:v0".parse(), Ok(Op::Eliminate("v0".into())));
        assert!("attach-head:v0".parse::<Op>().is_err());
        assert!("attach-star:v0,x".parse::<Op>().is_err());
        assert!("cohn-cover:x".parse::<Op>().is_err());
        assert!("rotate".parse::<Op>().is_err());
    }
}
