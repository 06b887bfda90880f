//! Minimal OBJ reader: `v` positions and polygonal `f` faces only.
//! Texture/normal references (`f 1/2/3`) are accepted and ignored.

use super::{MeshError, Polyhedron};
use crate::kernel::{parse_exact, Vec3};

pub fn load_obj(text: &str) -> Result<Polyhedron, MeshError> {
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut boundaries: Vec<Vec<usize>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        match parts.next() {
            Some("v") => {
                let mut coord = |what: &str| {
                    parts
                        .next()
                        .and_then(parse_exact)
                        .ok_or_else(|| MeshError::Parse {
                            line,
                            message: format!("invalid vertex {what}"),
                        })
                };
                let x = coord("x")?;
                let y = coord("y")?;
                let z = coord("z")?;
                vertices.push(Vec3::new(x, y, z));
            }
            Some("f") => {
                let mut boundary = Vec::new();
                for token in parts {
                    let index_part = token.split('/').next().unwrap_or("");
                    let idx: i64 = index_part.parse().map_err(|_| MeshError::Parse {
                        line,
                        message: format!("invalid face index {token:?}"),
                    })?;
                    let resolved = if idx > 0 {
                        (idx - 1) as usize
                    } else if idx < 0 {
                        let back = (-idx) as usize;
                        if back > vertices.len() {
                            return Err(MeshError::Parse {
                                line,
                                message: format!("relative face index {idx} out of range"),
                            });
                        }
                        vertices.len() - back
                    } else {
                        return Err(MeshError::Parse {
                            line,
                            message: "face index 0".into(),
                        });
                    };
                    boundary.push(resolved);
                }
                if boundary.len() < 3 {
                    return Err(MeshError::Parse {
                        line,
                        message: "face with fewer than 3 vertices".into(),
                    });
                }
                boundaries.push(boundary);
            }
            // Ignore normals, texcoords, groups, materials, smoothing.
            Some("vn" | "vt" | "vp" | "g" | "o" | "s" | "usemtl" | "mtllib" | "l" | "p") => {}
            Some(other) => {
                return Err(MeshError::Parse {
                    line,
                    message: format!("unsupported OBJ directive {other:?}"),
                });
            }
            None => {}
        }
    }
    Polyhedron::from_parts(vertices, boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_cube_obj() {
        let text = "\
v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n\
f 1 4 3 2\nf 5 6 7 8\nf 1 2 6 5\nf 2 3 7 6\nf 3 4 8 7\nf 4 1 5 8\n";
        let p = load_obj(text).unwrap();
        assert_eq!(p.facets.len(), 6);
        assert_eq!(p.vertices.len(), 8);
    }

    #[test]
    fn slash_references_and_negatives_are_accepted() {
        let text = "\
v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n\
f 1/1 4/2 3/3 2/4\nf 5//1 6//1 7//1 8//1\nf -8 -7 -3 -4\nf 2 3 7 6\nf 3 4 8 7\nf 4 1 5 8\n";
        let p = load_obj(text).unwrap();
        assert_eq!(p.facets.len(), 6);
    }

    #[test]
    fn nonmanifold_obj_is_rejected() {
        // Open box (5 faces) leaves boundary edges.
        let text = "\
v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n\
f 1 4 3 2\nf 1 2 6 5\nf 2 3 7 6\nf 3 4 8 7\nf 4 1 5 8\n";
        match load_obj(text) {
            Err(MeshError::NotClosed { .. }) => {}
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }
}
