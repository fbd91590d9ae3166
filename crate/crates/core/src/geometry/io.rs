//! Body description files.
//!
//! A body is a JSON object tagged by `"type"`:
//!
//! ```json
//! {"type": "hpoly", "normals": [[1,0],[0,1],[-1,-1]], "offsets": [1,1,1]}
//! {"type": "vpoly", "vertices": [[0,0],[1,0],[0,1]]}
//! {"type": "ellipsoid", "center": [0,0], "shape": [[4,0],[0,1]]}
//! {"type": "ball", "center": [0,0], "radius": 1}
//! {"type": "box", "lower": [-1,-1], "upper": [1,1]}
//! {"type": "simplex", "dim": 2}
//! ```
//!
//! The ellipsoid is `{x : (x−c)ᵀ Q⁻¹ (x−c) ≤ 1}` with `Q = shape`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ConvexBody, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Hpoly { normals: Vec<Vec<f64>>, offsets: Vec<f64> },
    Vpoly { vertices: Vec<Point> },
    Ellipsoid { center: Point, shape: Vec<Vec<f64>> },
    Ball { center: Point, radius: f64 },
    Box { lower: Point, upper: Point },
    Simplex { dim: usize },
}

impl BodySpec {
    pub fn build(self) -> Result<ConvexBody> {
        match self {
            BodySpec::Hpoly { normals, offsets } => ConvexBody::hpolytope(normals, offsets),
            BodySpec::Vpoly { vertices } => ConvexBody::vpolytope(vertices),
            BodySpec::Ellipsoid { center, shape } => ConvexBody::ellipsoid(center, shape),
            BodySpec::Ball { center, radius } => ConvexBody::ball(center, radius),
            BodySpec::Box { lower, upper } => ConvexBody::axis_box(lower, upper),
            BodySpec::Simplex { dim } => ConvexBody::simplex(dim),
        }
    }
}

/// Parses and validates a body description. Syntax errors carry the line and
/// column reported by the JSON reader.
pub fn parse_body(text: &str) -> Result<ConvexBody> {
    let spec: BodySpec = serde_json::from_str(text).map_err(|e| {
        Error::InvalidBody(format!("line {}, column {}: {}", e.line(), e.column(), e))
    })?;
    spec.build()
}

pub fn load_body(path: &Path) -> Result<ConvexBody> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidBody(format!("{}: {e}", path.display())))?;
    parse_body(&text).map_err(|e| match e {
        Error::InvalidBody(m) => Error::InvalidBody(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let docs = [
            r#"{"type":"hpoly","normals":[[1,0],[0,1],[-1,-1]],"offsets":[1,1,1]}"#,
            r#"{"type":"vpoly","vertices":[[0,0],[1,0],[0,1]]}"#,
            r#"{"type":"ellipsoid","center":[0,0],"shape":[[4,0],[0,1]]}"#,
            r#"{"type":"ball","center":[0,0],"radius":1}"#,
            r#"{"type":"box","lower":[-1,-1],"upper":[1,1]}"#,
            r#"{"type":"simplex","dim":2}"#,
        ];
        for d in docs {
            assert_eq!(parse_body(d).unwrap().dim(), 2, "{d}");
        }
    }

    #[test]
    fn reports_location() {
        let err = parse_body("{\"type\":\"ball\",\n\"center\":[0,0],\n\"radius\":}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn rejects_unknown_type_and_fields() {
        assert!(parse_body(r#"{"type":"torus"}"#).is_err());
        assert!(parse_body(r#"{"type":"simplex","dim":2,"extra":1}"#).is_err());
        assert!(parse_body(r#"{"type":"ball","center":[0,0],"radius":-1}"#).is_err());
    }
}
