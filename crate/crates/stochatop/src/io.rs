//! Plain-text complex format and the bundled example triangulations.
//!
//! The format is line-oriented: `#` starts a comment, blank lines are
//! skipped, the first significant line is `n <vertex-count>`, and every
//! following line lists the vertices of one facet (faces are implied).

use std::path::Path;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Parses a complex from the text format. Errors carry 1-based line numbers.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut n_vertices: Option<usize> = None;
    let mut facets: Vec<Simplex> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match n_vertices {
            None => {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("n") {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected header `n <vertex-count>`".into(),
                    });
                }
                let count = parts
                    .next()
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "header is missing the vertex count".into(),
                    })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse {
                        line: line_no,
                        msg: format!("invalid vertex count: {e}"),
                    })?;
                if parts.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "unexpected tokens after vertex count".into(),
                    });
                }
                n_vertices = Some(count);
            }
            Some(n) => {
                let mut vertices: Vec<u32> = Vec::new();
                for tok in line.split_whitespace() {
                    let v = tok.parse::<u32>().map_err(|e| Error::Parse {
                        line: line_no,
                        msg: format!("invalid vertex label `{tok}`: {e}"),
                    })?;
                    if v as usize >= n {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("vertex {v} is out of range for n {n}"),
                        });
                    }
                    vertices.push(v);
                }
                let simplex = Simplex::from_unsorted(vertices).map_err(|e| Error::Parse {
                    line: line_no,
                    msg: e.to_string(),
                })?;
                facets.push(simplex);
            }
        }
    }
    let n = n_vertices.ok_or_else(|| Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing header `n <vertex-count>`".into(),
    })?;
    SimplicialComplex::from_facets(n, &facets)
}

/// Writes a complex in the text format, listing its maximal simplices.
pub fn write_complex(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", complex.n_vertices()));
    for s in complex.maximal_simplices() {
        out.push_str(&format!("{s}\n"));
    }
    out
}

/// Reads a complex from a file in the text format.
pub fn read_complex_file(path: &Path) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path)?;
    parse_complex(&text)
}

/// Writes a complex to a file in the text format.
pub fn write_complex_file(path: &Path, complex: &SimplicialComplex) -> Result<()> {
    std::fs::write(path, write_complex(complex))?;
    Ok(())
}

/// Built-in triangulations used by the test and experiment suites.
pub mod datasets {
    use super::parse_complex;
    use crate::complex::SimplicialComplex;

    const TORUS_7: &str = include_str!("../data/torus_7.cplx");
    const PROJECTIVE_PLANE_6: &str = include_str!("../data/projective_plane_6.cplx");
    const DUNCE_HAT_8: &str = include_str!("../data/dunce_hat_8.cplx");
    const COMPLEX_PROJECTIVE_PLANE_9: &str =
        include_str!("../data/complex_projective_plane_9.cplx");
    const KLEIN_BOTTLE_9: &str = include_str!("../data/klein_bottle_9.cplx");

    fn parse_builtin(text: &str) -> SimplicialComplex {
        parse_complex(text).expect("bundled dataset parses")
    }

    /// 7-vertex torus: f = (7, 21, 14), Betti (1, 2, 1) over every field.
    pub fn torus_7() -> SimplicialComplex {
        parse_builtin(TORUS_7)
    }

    /// 6-vertex real projective plane: Betti (1, 0, 0) over the rationals,
    /// (1, 1, 1) over the field with two elements.
    pub fn projective_plane_6() -> SimplicialComplex {
        parse_builtin(PROJECTIVE_PLANE_6)
    }

    /// 8-vertex dunce hat: contractible but not collapsible.
    pub fn dunce_hat_8() -> SimplicialComplex {
        parse_builtin(DUNCE_HAT_8)
    }

    /// 9-vertex complex projective plane: f = (9, 36, 84, 90, 36),
    /// Betti (1, 0, 1, 0, 1); the square of a degree-2 generator spans
    /// degree 4.
    pub fn complex_projective_plane_9() -> SimplicialComplex {
        parse_builtin(COMPLEX_PROJECTIVE_PLANE_9)
    }

    /// 9-vertex Klein bottle: Betti (1, 1, 0) over the rationals,
    /// (1, 2, 1) over the field with two elements.
    pub fn klein_bottle_9() -> SimplicialComplex {
        parse_builtin(KLEIN_BOTTLE_9)
    }

    /// Names accepted by [`by_name`].
    pub fn names() -> &'static [&'static str] {
        &[
            "torus",
            "projective_plane",
            "dunce_hat",
            "complex_projective_plane",
            "klein_bottle",
        ]
    }

    /// Looks up a bundled triangulation by name.
    pub fn by_name(name: &str) -> Option<SimplicialComplex> {
        match name {
            "torus" => Some(torus_7()),
            "projective_plane" => Some(projective_plane_6()),
            "dunce_hat" => Some(dunce_hat_8()),
            "complex_projective_plane" => Some(complex_projective_plane_9()),
            "klein_bottle" => Some(klein_bottle_9()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn parse_simple_complex() {
        let text = "# a triangle\nn 3\n0 1 2\n";
        let c = parse_complex(text).unwrap();
        assert_eq!(c.n_vertices(), 3);
        assert_eq!(c.f_vector(), &[3, 3, 1]);
    }

    #[test]
    fn inline_comments_and_blank_lines() {
        let text = "\nn 4  # four labels\n\n0 1 # an edge\n2 3\n";
        let c = parse_complex(text).unwrap();
        assert_eq!(c.f_vector(), &[4, 2]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_complex("n 3\n0 x 2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
        let err = parse_complex("vertices 3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error: {other}"),
        }
        let err = parse_complex("# nothing here\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn duplicate_vertex_in_facet_is_a_parse_error() {
        let err = parse_complex("n 3\n0 1 1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn round_trip_through_text() {
        let c = datasets::torus_7();
        let text = write_complex(&c);
        let back = parse_complex(&text).unwrap();
        assert_eq!(back.f_vector(), c.f_vector());
        assert_eq!(back.fingerprint(), c.fingerprint());
    }

    #[test]
    fn bundled_datasets_have_expected_face_counts() {
        assert_eq!(datasets::torus_7().f_vector(), &[7, 21, 14]);
        assert_eq!(datasets::projective_plane_6().f_vector(), &[6, 15, 10]);
        assert_eq!(datasets::dunce_hat_8().f_vector(), &[8, 24, 17]);
        assert_eq!(
            datasets::complex_projective_plane_9().f_vector(),
            &[9, 36, 84, 90, 36]
        );
        assert_eq!(datasets::klein_bottle_9().f_vector(), &[9, 27, 18]);
    }

    #[test]
    fn by_name_covers_all_names() {
        for name in datasets::names() {
            assert!(
                datasets::by_name(name).is_some(),
                "missing dataset `{name}`"
            );
        }
        assert!(datasets::by_name("poincare_sphere").is_none());
    }
}
