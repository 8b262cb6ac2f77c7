use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::Point3;

/// Face-vertex mesh as read from disk: positions plus homogeneous faces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<usize>>,
}

impl PolyMesh {
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Self {
        PolyMesh { vertices, faces }
    }

    /// Common face arity, or `None` for a mesh without faces.
    pub fn arity(&self) -> Option<usize> {
        self.faces.first().map(Vec::len)
    }

    /// Checks index ranges, repeated corners and arity homogeneity.
    pub fn check_faces(&self) -> Result<usize> {
        let arity = self.arity().ok_or_else(|| Error::NonManifold("mesh has no faces".into()))?;
        if arity != 3 && arity != 4 {
            return Err(Error::UnsupportedArity(arity));
        }
        for (fi, f) in self.faces.iter().enumerate() {
            if f.len() != arity {
                return Err(Error::MixedArity {
                    first: arity,
                    other: f.len(),
                });
            }
            for (i, &v) in f.iter().enumerate() {
                if v >= self.vertices.len() {
                    return Err(Error::BadIndex {
                        face: fi,
                        index: v as i64,
                    });
                }
                if f[..i].contains(&v) {
                    return Err(Error::NonManifold(format!("face {fi} repeats vertex {v}")));
                }
            }
        }
        Ok(arity)
    }
}

/// Parses the `v` and `f` records of an ASCII OBJ document.
///
/// Face corners may carry texture/normal references (`f 1/2/3 ...`), which
/// are ignored, and may use negative (relative) indices.
pub fn load_obj(text: &str) -> Result<PolyMesh> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let mut arity: Option<usize> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let coords: Vec<f64> = parts
                    .take(3)
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Parse {
                        line: ln + 1,
                        msg: format!("bad coordinate: {e}"),
                    })?;
                if coords.len() < 3 {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: "vertex needs three coordinates".into(),
                    });
                }
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: "coordinates must be finite".into(),
                    });
                }
                vertices.push(Point3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let mut face = Vec::new();
                for tok in parts {
                    let idx_str = tok.split('/').next().unwrap_or("");
                    let idx: i64 = idx_str.parse().map_err(|_| Error::Parse {
                        line: ln + 1,
                        msg: format!("bad face index `{tok}`"),
                    })?;
                    let resolved = match idx {
                        i if i > 0 => i - 1,
                        i if i < 0 => vertices.len() as i64 + i,
                        _ => -1,
                    };
                    if resolved < 0 || resolved >= vertices.len() as i64 {
                        return Err(Error::BadIndex {
                            face: faces.len(),
                            index: idx,
                        });
                    }
                    face.push(resolved as usize);
                }
                match arity {
                    None => arity = Some(face.len()),
                    Some(a) if a != face.len() => {
                        return Err(Error::MixedArity {
                            first: a,
                            other: face.len(),
                        })
                    }
                    _ => {}
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    let mesh = PolyMesh { vertices, faces };
    mesh.check_faces()?;
    // Manifoldness is a property of the connectivity; building the
    // half-edge structure performs the check.
    crate::mesh::HalfEdgeMesh::new(&mesh)?;
    Ok(mesh)
}

/// Writes an ASCII OBJ document (1-based indices).
pub fn write_obj(mesh: &PolyMesh) -> String {
    let mut out = String::new();
    for p in &mesh.vertices {
        let _ = writeln!(out, "v {:.17e} {:.17e} {:.17e}", p.x, p.y, p.z);
    }
    for f in &mesh.faces {
        out.push('f');
        for v in f {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}
