//! ```text
//! contour <name>
//! point <x> <y>      # integers or p/q rationals
//! ...
//! end
//! ```

use num_rational::BigRational;

use super::{content_lines, syntax};
use crate::error::{Error, Result};
use crate::geometry::{Contour, ContourSet, Point};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContourDocument {
    pub contours: Vec<(String, Contour)>,
}

impl ContourDocument {
    pub fn to_set(&self) -> ContourSet {
        ContourSet::new(self.contours.iter().map(|(_, c)| c.clone()).collect())
    }
}

fn parse_coordinate(token: &str, line: usize) -> Result<BigRational> {
    let bad = || syntax(line, format!("bad coordinate `{token}`"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_contours(text: &str) -> Result<ContourDocument> {
    let mut doc = ContourDocument::default();
    let mut open: Option<(String, Vec<Point>)> = None;
    for (line, content) in content_lines(text) {
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or("");
        match (&mut open, keyword) {
            (None, "contour") => {
                let name = tokens.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(syntax(line, "contour needs a name"));
                }
                open = Some((name, Vec::new()));
            }
            (None, other) => {
                return Err(syntax(line, format!("expected `contour <name>`, found `{other}`")))
            }
            (Some((_, points)), "point") => {
                let coords: Vec<&str> = tokens.collect();
                if coords.len() != 2 {
                    return Err(syntax(line, "point needs two coordinates"));
                }
                points.push(Point::new(
                    parse_coordinate(coords[0], line)?,
                    parse_coordinate(coords[1], line)?,
                ));
            }
            (Some(_), "end") => {
                let (name, points) = open.take().expect("inside a block");
                let contour = Contour::new(points).map_err(|e| match e {
                    Error::TooFewVertices(_) | Error::RepeatedVertex(_) => syntax(line, e.to_string()),
                    other => other,
                })?;
                doc.contours.push((name, contour));
            }
            (Some(_), other) => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some((name, _)) = open {
        return Err(syntax(
            text.lines().count().max(1),
            format!("contour `{name}` is missing `end`"),
        ));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn two_triangles() {
        let text = "contour a\npoint 0 0\npoint 4 1\npoint 1 3\nend\n\
                    contour b\npoint 10 0\npoint 14 2\npoint 11 5\nend\n";
        let doc = parse_contours(text).unwrap();
        assert_eq!(doc.contours.len(), 2);
        assert_eq!(doc.contours[1].0, "b");
    }

    #[test]
    fn rational_coordinates() {
        let doc = parse_contours("contour r\npoint 1/3 2\npoint -5/2 7\npoint 4 -1/9\nend").unwrap();
        let p = &doc.contours[0].1.vertices()[0];
        assert_eq!(p.x, BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert_eq!(p.y, BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_contours("contour r\npoint 0 0\npoint 1 1\nend"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_contours("contour r\npoint 0 1/0\nend"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_contours("point 0 0").is_err());
    }
}
