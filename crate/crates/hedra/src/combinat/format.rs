//! Plain-text polyhedron format.
//!
//! ```text
//! # comment
//! face <id>
//! edge <id1> <id2> <n>     # dihedral angle pi/n
//! ```
//!
//! Face ids are arbitrary non-whitespace tokens; declaration order fixes the
//! face (and hence Gram row) order.

use super::{AngledPolyhedron, CombinatError};

pub fn parse_text(input: &str) -> Result<AngledPolyhedron, CombinatError> {
    let mut faces: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, u32)> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: &str| CombinatError::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        match toks[0] {
            "face" => {
                if toks.len() != 2 {
                    return Err(err("expected `face <id>`"));
                }
                faces.push(toks[1].to_string());
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(err("expected `edge <id1> <id2> <n>`"));
                }
                let n: u32 = toks[3]
                    .parse()
                    .map_err(|_| err("angle denominator must be a positive integer"))?;
                edges.push((toks[1].to_string(), toks[2].to_string(), n));
            }
            other => {
                return Err(err(&format!("unknown directive `{other}`")));
            }
        }
    }
    AngledPolyhedron::from_parts(faces, &edges)
}

pub fn to_text(p: &AngledPolyhedron) -> String {
    let mut out = String::new();
    for f in p.faces() {
        out.push_str(&format!("face {f}\n"));
    }
    for (i, j, n) in p.edges() {
        out.push_str(&format!("edge {} {} {}\n", p.faces()[i], p.faces()[j], n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let src = "\
# a triangular prism
face top
face l0
face l1
face l2
face bot
edge top l0 2
edge top l1 2
edge top l2 2
edge l0 l1 5
edge l1 l2 5
edge l2 l0 5   # the circuit
edge bot l0 2
edge bot l1 2
edge bot l2 2
";
        let p = parse_text(src).unwrap();
        assert_eq!(p.face_count(), 5);
        let txt = to_text(&p);
        let p2 = parse_text(&txt).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn reports_line_numbers() {
        let src = "face a\nedge a b\n";
        match parse_text(src) {
            Err(CombinatError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
