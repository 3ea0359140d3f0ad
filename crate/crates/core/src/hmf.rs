//! The line-oriented `hmf 1` hypermap file format.
//!
//! ```text
//! hmf 1
//! labels 4
//! vertex v (1 3) (2 4)
//! hyperedge e (1 3) (4 2)
//! iota (1 2)(3 4)
//! ```
//!
//! `#` starts a comment. The `iota` line is optional on input and always
//! written on output.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::hypermap::{ClassSpec, Hypermap};
use crate::notation::{parse_cycles_at, write_cycle, CycleSet};

pub fn parse(text: &str) -> Result<Hypermap> {
    let mut header = false;
    let mut declared: Option<usize> = None;
    let mut vertices = Vec::new();
    let mut hyperedges = Vec::new();
    let mut iota: Option<CycleSet> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (word, rest) = split_word(line);
        if !header {
            if word != "hmf" || rest.trim() != "1" {
                return Err(Error::parse(line_no, "expected header `hmf 1`"));
            }
            header = true;
            continue;
        }
        match word {
            "labels" => {
                let n = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, "bad label count"))?;
                declared = Some(n);
            }
            "vertex" | "hyperedge" => {
                let (name, cycles) = split_word(rest.trim());
                if name.is_empty() || name.starts_with('(') {
                    return Err(Error::parse(line_no, format!("{word} needs a name")));
                }
                let cs = parse_cycles_at(cycles, line_no)?;
                let [a, b]: [Vec<u64>; 2] = cs.cycles.try_into().map_err(|_| {
                    Error::parse(line_no, format!("{word} {name} needs exactly two cycles"))
                })?;
                let spec = ClassSpec {
                    name: name.to_string(),
                    cycles: [a, b],
                };
                if word == "vertex" {
                    vertices.push(spec);
                } else {
                    hyperedges.push(spec);
                }
            }
            "iota" => {
                if iota.is_some() {
                    return Err(Error::parse(line_no, "iota given twice"));
                }
                iota = Some(parse_cycles_at(rest, line_no)?);
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive {other:?}"),
                ))
            }
        }
    }
    if !header {
        return Err(Error::parse(1, "empty input"));
    }
    let h = Hypermap::from_parts(vertices, hyperedges, iota.as_ref())?;
    if let Some(n) = declared {
        if n != h.n_labels() {
            return Err(Error::parse(
                0,
                format!("declared {n} labels but found {}", h.n_labels()),
            ));
        }
    }
    Ok(h)
}

pub fn write(h: &Hypermap) -> String {
    let (vs, es, iota) = h.to_specs();
    let mut out = String::new();
    out.push_str("hmf 1\n");
    let _ = writeln!(out, "labels {}", h.n_labels());
    for (word, classes) in [("vertex", &vs), ("hyperedge", &es)] {
        for c in classes {
            let _ = write!(out, "{word} {} ", c.name);
            let _ = write_cycle(&mut out, &c.cycles[0]);
            out.push(' ');
            let _ = write_cycle(&mut out, &c.cycles[1]);
            out.push('\n');
        }
    }
    let _ = writeln!(out, "iota {iota}");
    out
}

fn split_word(s: &str) -> (&str, &str) {
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        for text in [
            include_str!("../data/fig7.hmf"),
            include_str!("../data/plane_example.hmf"),
            include_str!("../data/torus_example.hmf"),
        ] {
            let h = parse(text).unwrap();
            let written = write(&h);
            let back = parse(&written).unwrap();
            assert!(back.same_flags(&h));
            assert_eq!(write(&back), written);
        }
    }

    #[test]
    fn header_and_directives() {
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
        assert!(matches!(parse("hmf 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse("hmf 1\nbogus 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("hmf 1\nlabels 4\nvertex v (1) (2)\nhyperedge e (1) (2)\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("hmf 1\nvertex v (1)\nhyperedge e (1) (2)\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn comments_and_commas() {
        let h = parse("# c\nhmf 1 # trailing\nvertex v (1,3) (2,4)\nhyperedge e (1 3) (4 2)\n")
            .unwrap();
        assert_eq!(h.n_labels(), 4);
        assert_eq!(h.counts().chi, 2);
    }
}
