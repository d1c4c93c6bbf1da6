//! Transcribes the four illustrated configurations into polylines, checks every
//! caption relation, and writes `fixtures/figN.json` only when all of them hold.
//!
//! Run with `cargo run -p outerstring --example calibrate_fixtures`.

use std::path::PathBuf;
use std::process::ExitCode;

use outerstring::gen::figure_relations;
use outerstring::geom::io::{parse_rational, curves_to_json};
use outerstring::geom::{validate_family, GroundedCurve, Point};

type Transcription = &'static [(&'static str, &'static [(&'static str, &'static str)])];

// p6 bends at (7.4, 2.6) instead of on s2's vertex.
const FIG1: Transcription = &[
    ("s1", &[("0", "0"), ("1", "4.5"), ("3.5", "2"), ("4", "5.5")]),
    ("s2", &[("7", "0"), ("7.5", "2.5"), ("9", "4"), ("8.5", "5.5"), ("6", "5.5"), ("5", "3")]),
    ("p1", &[("1", "0"), ("2.5", "4"), ("6.5", "4.5"), ("8", "5")]),
    ("p2", &[("2", "0"), ("2.5", "2.5"), ("3", "3.5")]),
    ("p3", &[("4", "0"), ("3", "1"), ("0.5", "2.5"), ("-0.5", "4")]),
    ("p4", &[("5", "0"), ("5.5", "2"), ("8.5", "1.5")]),
    ("p5", &[("6", "0"), ("6", "3"), ("4.5", "4")]),
    ("p6", &[("8", "0"), ("7.4", "2.6"), ("6.5", "3.5")]),
    ("p7", &[("9", "0"), ("9", "3"), ("5.5", "6")]),
];

// p4's middle vertex and horizontal are lifted by 0.1 so it reaches s1 below u.
const FIG2: Transcription = &[
    ("u", &[("0", "0"), ("0.5", "3"), ("3", "5"), ("7", "5"), ("7", "3"), ("9", "3")]),
    ("v", &[("9", "0"), ("8", "2"), ("8", "4"), ("4", "4")]),
    ("s1", &[("3", "0"), ("2", "5"), ("0.5", "4"), ("2", "2.5")]),
    ("s2", &[("6", "0"), ("6", "3"), ("5", "6")]),
    ("p1", &[("1", "0"), ("1", "2"), ("2", "3")]),
    ("p2", &[("2", "0"), ("3", "2.5"), ("4", "3")]),
    ("p3", &[("4", "0"), ("5", "2"), ("5", "3.5")]),
    ("p4", &[("7", "0"), ("5.9", "2.1"), ("4", "2.1"), ("3", "3.5")]),
];

// s1's vertex moves left by 0.1 and p1's bend rises by 0.2 so p1 first meets s1;
// p3 bends at (2.9, 3) instead of on s3.
const FIG3: Transcription = &[
    ("s1", &[("0.5", "0"), ("2", "4.5"), ("5.4", "2.5"), ("7.5", "2.5")]),
    ("s2", &[("2", "0"), ("2.5", "5"), ("7", "5"), ("9.5", "5.5")]),
    ("s3", &[("3", "0"), ("3", "4"), ("8", "4")]),
    ("p1", &[("5.5", "0"), ("5.5", "2.7"), ("7.5", "3.5"), ("10", "3")]),
    ("p2", &[("6.5", "0"), ("7", "1.5"), ("9.5", "3"), ("7.5", "6")]),
    ("p3", &[("7.5", "0"), ("6.5", "3.5"), ("2.9", "3"), ("0.5", "4.5")]),
    ("p4", &[("9", "0"), ("8", "3"), ("6", "5.5")]),
];

const FIG4: Transcription = &[
    ("q1", &[("2.5", "0"), ("2", "1.5"), ("-0.5", "3.5"), ("1", "5")]),
    ("q2", &[("4.5", "0"), ("4", "1.5"), ("1", "3.5"), ("-0.5", "5.5")]),
    ("s", &[("3.5", "0"), ("4", "2"), ("5", "4.5"), ("3.5", "5.5"), ("2.5", "4.5"), ("3", "3")]),
    ("p1", &[("1", "0"), ("2", "3.5"), ("5.5", "4"), ("7", "2"), ("8.5", "1.5")]),
    ("p2", &[("6", "0"), ("7.5", "2"), ("8", "4"), ("6.5", "5.5"), ("4.5", "5"), ("4", "3.5")]),
    ("p3", &[("8", "0"), ("6", "2"), ("7", "3.5")]),
];

fn curves(t: Transcription) -> Vec<GroundedCurve> {
    t.iter()
        .map(|(id, pts)| {
            let v = pts
                .iter()
                .map(|(x, y)| Point::new(parse_rational(x).unwrap(), parse_rational(y).unwrap()))
                .collect();
            GroundedCurve::new(*id, v)
        })
        .collect()
}

fn main() -> ExitCode {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut ready = Vec::new();
    for (which, t) in [(1u8, FIG1), (2, FIG2), (3, FIG3), (4, FIG4)] {
        let family = match validate_family(curves(t)) {
            Ok(f) => f,
            Err(v) => {
                eprintln!("figure {which}: not in general position: {v:?}");
                return ExitCode::FAILURE;
            }
        };
        let rel = figure_relations(which).expect("known figure");
        match rel.check(&family) {
            Ok(log) => {
                for line in log {
                    eprintln!("figure {which}: {line}");
                }
            }
            Err(e) => {
                eprintln!("figure {which}: {e}");
                return ExitCode::FAILURE;
            }
        }
        ready.push((which, curves_to_json(&curves(t))));
    }
    for (which, json) in ready {
        let path = dir.join(format!("fig{which}.json"));
        std::fs::write(&path, json).expect("fixture directory is writable");
        eprintln!("wrote {}", path.display());
    }
    ExitCode::SUCCESS
}
