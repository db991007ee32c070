use serde::Serialize;

use super::{ConstructionCertificate, Kind, SynthesisError, Witness};
use crate::embedding::Embedding;
use crate::graph::{cut_edges, EdgeId, Graph};
use crate::trace::validate_double_trace;

/// One signature flip that merged two faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flip {
    pub edge: EdgeId,
    pub faces_before: usize,
    pub faces_after: usize,
}

/// Flips the smallest edge lying on two distinct faces until one face is
/// left. Each flip must merge exactly two faces.
pub fn merge_faces<'g>(start: Embedding<'g>) -> Result<(Embedding<'g>, Vec<Flip>), SynthesisError> {
    let mut emb = start;
    let mut flips = Vec::new();
    let mut faces = emb.face_count();
    while faces > 1 {
        let edge = emb
            .faces_by_edge()
            .iter()
            .position(|[a, b]| a != b)
            .ok_or_else(|| SynthesisError::internal(format!("{faces} faces but no edge lies on two of them")))?;
        emb = emb.flip_signature(edge).map_err(|err| SynthesisError::internal(err.to_string()))?;
        let after = emb.face_count();
        if after + 1 != faces {
            return Err(SynthesisError::internal(format!("flipping edge {edge} took {faces} faces to {after}")));
        }
        flips.push(Flip { edge, faces_before: faces, faces_after: after });
        faces = after;
    }
    Ok((emb, flips))
}

/// A 1-face embedding reached from the initial embedding by face merging.
pub fn one_face_embedding(g: &Graph) -> Result<(Embedding<'_>, Vec<Flip>), SynthesisError> {
    merge_faces(Embedding::initial(g))
}

/// [`one_face_embedding`], certified together with its facial walk.
pub fn certified_one_face(g: &Graph) -> Result<ConstructionCertificate<'_>, SynthesisError> {
    let (emb, flips) = one_face_embedding(g)?;
    certify_face(g, Kind::OneFaceEmbedding, None, emb, Witness::Flips { flips })
}

/// The facial walk of a 1-face embedding, certified strong.
pub fn strong_trace(g: &Graph) -> Result<ConstructionCertificate<'_>, SynthesisError> {
    let (emb, flips) = one_face_embedding(g)?;
    certify_face(g, Kind::Strong, None, emb, Witness::Flips { flips })
}

/// A 1-face embedding on a nonorientable surface.
pub fn nonorientable_one_face(g: &Graph) -> Result<ConstructionCertificate<'_>, SynthesisError> {
    if g.is_tree() {
        return Err(SynthesisError::IsATree);
    }
    let (mut emb, mut flips) = one_face_embedding(g)?;
    if emb.is_orientable() {
        let bridges = cut_edges(g);
        let edge = (0..g.edge_count())
            .find(|e| !bridges.contains(e))
            .ok_or_else(|| SynthesisError::internal("a graph with a cycle has a non-cut edge"))?;
        emb = emb.flip_signature(edge).map_err(|err| SynthesisError::internal(err.to_string()))?;
        flips.push(Flip { edge, faces_before: 1, faces_after: emb.face_count() });
    }
    certify_face(g, Kind::NonorientableOneFace, None, emb, Witness::Flips { flips })
}

/// A strong trace certified `d`-stable, which exists exactly when every
/// degree exceeds `d`.
pub fn d_stable_trace(g: &Graph, d: usize) -> Result<ConstructionCertificate<'_>, SynthesisError> {
    let vertex = g.min_degree_vertex();
    if g.degree(vertex) <= d {
        return Err(SynthesisError::DegreeTooSmall { vertex, degree: g.degree(vertex), d });
    }
    let (emb, flips) = one_face_embedding(g)?;
    certify_face(g, Kind::DStable, Some(d), emb, Witness::Flips { flips })
}

fn certify_face<'g>(
    g: &'g Graph,
    kind: Kind,
    d: Option<usize>,
    emb: Embedding<'g>,
    witness: Witness,
) -> Result<ConstructionCertificate<'g>, SynthesisError> {
    let faces = emb.trace_faces();
    let [face] = faces.as_slice() else {
        return Err(SynthesisError::internal(format!("expected one face, found {}", faces.len())));
    };
    let trace = validate_double_trace(g, &face.vertices()).map_err(|err| SynthesisError::internal(err.to_string()))?;
    ConstructionCertificate::seal(g, kind, d, Some(trace), Some(emb), witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::SurfaceDescriptor;
    use crate::fixtures;

    #[test]
    fn trees_need_no_flips() {
        for g in [fixtures::path(5), fixtures::star(4)] {
            let (emb, flips) = one_face_embedding(&g).unwrap();
            assert!(flips.is_empty());
            assert_eq!(emb.face_count(), 1);
        }
    }

    #[test]
    fn k4_from_its_initial_embedding() {
        let g = fixtures::complete(4);
        let start = Embedding::initial(&g).face_count();
        let (emb, flips) = one_face_embedding(&g).unwrap();
        assert_eq!(flips.len(), start - 1);
        assert_eq!(emb.face_count(), 1);

        // from a planar drawing, exactly three merges
        let planar = crate::embedding::rotation_systems(&g)
            .map(|r| Embedding::orientable(&g, r).unwrap())
            .find(|e| e.face_count() == 4)
            .unwrap();
        let (_, flips) = merge_faces(planar).unwrap();
        assert_eq!(flips.len(), 3);
        assert!(flips.iter().all(|f| f.faces_after + 1 == f.faces_before));
    }

    #[test]
    fn triangle_lands_on_the_projective_plane() {
        let g = fixtures::cycle(3);
        let (emb, _) = one_face_embedding(&g).unwrap();
        assert_eq!(emb.surface().unwrap(), SurfaceDescriptor { orientable: false, genus: 1, face_count: 1 });
    }

    #[test]
    fn strong_trace_examples() {
        let k2 = fixtures::path(2);
        let cert = strong_trace(&k2).unwrap();
        assert_eq!(cert.trace().unwrap().vertices(), vec![0, 1]);

        let c3 = fixtures::cycle(3);
        let cert = strong_trace(&c3).unwrap();
        assert!(cert.verdict().verified);
        assert_eq!(cert.trace().unwrap().canonical(), vec![0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn nonorientable_examples() {
        assert_eq!(nonorientable_one_face(&fixtures::path(3)).unwrap_err(), SynthesisError::IsATree);
        let c3 = fixtures::cycle(3);
        let surface = nonorientable_one_face(&c3).unwrap().verdict().surface.unwrap();
        assert_eq!(surface, SurfaceDescriptor { orientable: false, genus: 1, face_count: 1 });
        let k5 = fixtures::complete(5);
        let surface = nonorientable_one_face(&k5).unwrap().verdict().surface.unwrap();
        assert_eq!(surface, SurfaceDescriptor { orientable: false, genus: 6, face_count: 1 });
    }

    #[test]
    fn d_stable_examples() {
        let k4 = fixtures::complete(4);
        assert!(d_stable_trace(&k4, 2).is_ok());
        let c3 = fixtures::cycle(3);
        assert!(matches!(d_stable_trace(&c3, 2), Err(SynthesisError::DegreeTooSmall { degree: 2, d: 2, .. })));
        assert!(d_stable_trace(&c3, 1).is_ok());
    }

    #[test]
    fn corpus_sweep() {
        for g in fixtures::connected_graphs(6) {
            let cert = strong_trace(&g).unwrap();
            assert!(cert.verdict().report.as_ref().unwrap().strong);
            for d in 1..=3 {
                assert_eq!(d_stable_trace(&g, d).is_ok(), g.min_degree() > d);
            }
            if !g.is_tree() {
                let cert = nonorientable_one_face(&g).unwrap();
                assert!(!cert.embedding().unwrap().is_orientable());
            }
        }
    }
}
