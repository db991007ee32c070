//! Constructions of double traces and 1-face embeddings, and the decision
//! procedures that gate them.
//!
//! Every construction returns a [`ConstructionCertificate`] whose verdict is
//! recomputed from the produced objects, or a [`SynthesisError`] explaining
//! why no object of the requested kind exists.

mod antiparallel;
mod double;
mod enumerate;
mod one_face;
mod parallel;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::embedding::{Embedding, FacialWalk, SurfaceDescriptor};
use crate::graph::{cotree_components_even, Graph, SpanningTree, Vertex};
use crate::trace::{validate_double_trace, DoubleTrace, TraceReport};

pub use antiparallel::{
    antiparallel_1stable_decision, antiparallel_decision, antiparallel_strong_trace, orientable_one_face_search,
    AntiparallelDecision,
};
pub use double::{any_double_trace, certified_double_trace, euler_tour, random_double_trace};
pub use enumerate::{
    automorphisms, enumerate_all, enumerate_strong_traces, strong_traces_by_embeddings, strong_traces_by_walks, Convention,
    EnumerationOptions, EnumerationResult, Tally,
};
pub use one_face::{
    certified_one_face, d_stable_trace, merge_faces, nonorientable_one_face, one_face_embedding, strong_trace, Flip,
};
pub use parallel::{parallel_d_stable_trace, parallel_strong_trace, Swap};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum SynthesisError {
    #[error("vertex {vertex} has degree {degree}, which does not exceed {d}")]
    DegreeTooSmall { vertex: Vertex, degree: usize, d: usize },
    #[error("vertex {vertex} has odd degree {degree}")]
    NotEulerian { vertex: Vertex, degree: usize },
    #[error("no such trace: {reason}")]
    NoSuchTrace { reason: Refusal },
    #[error("the graph is a tree, so every embedding is orientable")]
    IsATree,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("internal inconsistency: {message}")]
    Internal { message: String },
}

impl SynthesisError {
    pub(crate) fn internal(message: impl Into<String>) -> Self {
        SynthesisError::Internal { message: message.into() }
    }
}

/// Why an antiparallel construction or decision came out negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refusal {
    /// A 1-face orientable embedding has `F = 1`, forcing an even Betti number.
    OddBetti { betti: usize },
    /// Every spanning tree was examined and none passed the cotree test.
    NoTreeCertificate { trees_examined: u64 },
    /// Minimum degree at most one.
    MinDegree { vertex: Vertex, degree: usize },
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Refusal::OddBetti { betti } => write!(f, "Betti number {betti} is odd"),
            Refusal::NoTreeCertificate { trees_examined } => {
                write!(f, "none of the {trees_examined} spanning trees passes the cotree test")
            }
            Refusal::MinDegree { vertex, degree } => write!(f, "vertex {vertex} has degree {degree}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Double,
    Strong,
    DStable,
    ParallelStrong,
    ParallelDStable,
    AntiparallelStrong,
    OneFaceEmbedding,
    NonorientableOneFace,
}

/// Supporting data recorded by a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    None,
    Flips { flips: Vec<Flip> },
    SpanningTree { tree: SpanningTree },
    EulerTour { tour: Vec<Vertex>, swaps: Vec<Swap> },
}

/// Properties recomputed from the certificate's objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub verified: bool,
    pub report: Option<TraceReport>,
    pub surface: Option<SurfaceDescriptor>,
}

#[derive(Debug, Clone)]
pub struct ConstructionCertificate<'g> {
    kind: Kind,
    d: Option<usize>,
    trace: Option<DoubleTrace<'g>>,
    embedding: Option<Embedding<'g>>,
    witness: Witness,
    verdict: Verdict,
}

impl<'g> ConstructionCertificate<'g> {
    /// Re-verifies the objects and refuses to certify anything that fails.
    pub(crate) fn seal(
        graph: &'g Graph,
        kind: Kind,
        d: Option<usize>,
        trace: Option<DoubleTrace<'g>>,
        embedding: Option<Embedding<'g>>,
        witness: Witness,
    ) -> Result<Self, SynthesisError> {
        let verdict = verify(graph, kind, d, trace.as_ref(), embedding.as_ref(), &witness);
        if !verdict.verified {
            return Err(SynthesisError::internal(format!("{kind:?} construction failed verification")));
        }
        Ok(ConstructionCertificate { kind, d, trace, embedding, witness, verdict })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn d(&self) -> Option<usize> {
        self.d
    }

    pub fn trace(&self) -> Option<&DoubleTrace<'g>> {
        self.trace.as_ref()
    }

    pub fn embedding(&self) -> Option<&Embedding<'g>> {
        self.embedding.as_ref()
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    /// Drops the witness from the certificate (and from its JSON form).
    pub fn without_witness(mut self) -> Self {
        self.witness = Witness::None;
        self
    }
}

fn verify(
    graph: &Graph,
    kind: Kind,
    d: Option<usize>,
    trace: Option<&DoubleTrace>,
    embedding: Option<&Embedding>,
    witness: &Witness,
) -> Verdict {
    let mut ok = true;
    let report = trace.map(|w| {
        ok &= validate_double_trace(graph, &w.vertices()).is_ok();
        let report = w.classify_edges();
        let stable = |d: Option<usize>| d.is_some_and(|d| d <= report.max_stable_d);
        ok &= match kind {
            Kind::Double => true,
            Kind::Strong | Kind::OneFaceEmbedding | Kind::NonorientableOneFace => report.strong,
            Kind::DStable => stable(d),
            Kind::ParallelStrong => report.strong && report.parallel,
            Kind::ParallelDStable => report.parallel && stable(d),
            Kind::AntiparallelStrong => report.strong && report.antiparallel,
        };
        report
    });
    let surface = embedding.and_then(|emb| {
        let surface = emb.surface().ok();
        ok &= surface.is_some_and(|s| s.face_count == 1);
        if let Some(w) = trace {
            ok &= emb.trace_faces() == vec![FacialWalk::new(w.steps())];
        }
        ok &= match kind {
            Kind::AntiparallelStrong => emb.is_orientable(),
            Kind::NonorientableOneFace => !emb.is_orientable(),
            _ => true,
        };
        surface
    });
    if let Witness::SpanningTree { tree } = witness {
        ok &= SpanningTree::new(graph, tree.tree_edges().iter().copied()).as_ref() == Some(tree);
        ok &= kind != Kind::AntiparallelStrong || cotree_components_even(graph, tree);
    }
    ok &= trace.is_some() || embedding.is_some();
    Verdict { verified: ok, report, surface }
}

impl Serialize for ConstructionCertificate<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("kind", &self.kind)?;
        if let Some(d) = self.d {
            map.serialize_entry("d", &d)?;
        }
        if let Some(w) = &self.trace {
            map.serialize_entry("trace", &w.labels())?;
        }
        if let Some(emb) = &self.embedding {
            map.serialize_entry("embedding", emb)?;
        }
        map.serialize_entry("witness", &self.witness)?;
        map.serialize_entry("verified", &self.verdict.verified)?;
        if let Some(surface) = &self.verdict.surface {
            map.serialize_entry("surface", surface)?;
        }
        if let Some(report) = &self.verdict.report {
            map.serialize_entry("report", report)?;
        }
        map.end()
    }
}
