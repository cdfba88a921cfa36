//! Bound quivers: a finite quiver together with admissible relations.
//!
//! A path is stored as a sequence of arrow indices in traversal order, so
//! `[a, b]` means "walk a, then b" and requires `target(a) = source(b)`.

use crate::field::Scalar;
use std::fmt;

#[derive(Clone, Debug)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

/// One relation: a linear combination of parallel paths of length >= 2.
#[derive(Clone, Debug)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct BoundQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    /// A relation term is not a composable path, is too short, or the terms
    /// of a combination do not share source and target.
    MalformedPath(String),
    /// The arrow ideal is not nilpotent modulo the relations within the
    /// configured path-length bound: the algebra is infinite-dimensional
    /// (or the bound is too small).
    NonAdmissibleIdeal { length_bound: usize },
    UnknownVertex(String),
    UnknownArrow(String),
    DuplicateName(String),
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::MalformedPath(s) => write!(f, "malformed relation path: {s}"),
            QuiverError::NonAdmissibleIdeal { length_bound } => write!(
                f,
                "arrow ideal is not nilpotent modulo relations within path length {length_bound}"
            ),
            QuiverError::UnknownVertex(v) => write!(f, "unknown vertex {v:?}"),
            QuiverError::UnknownArrow(a) => write!(f, "unknown arrow {a:?}"),
            QuiverError::DuplicateName(n) => write!(f, "duplicate name {n:?}"),
        }
    }
}

impl std::error::Error for QuiverError {}

impl BoundQuiver {
    pub fn source_of_path(&self, path: &[usize]) -> Option<usize> {
        path.first().map(|&a| self.arrows[a].from)
    }

    pub fn target_of_path(&self, path: &[usize]) -> Option<usize> {
        path.last().map(|&a| self.arrows[a].to)
    }

    pub fn is_composable(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| self.arrows[w[0]].to == self.arrows[w[1]].from)
    }

    /// Checks relation well-formedness: every term a composable path of
    /// length >= 2, all terms parallel.
    pub fn validate(&self) -> Result<(), QuiverError> {
        let mut names: Vec<&str> = self.vertices.iter().map(|s| s.as_str()).collect();
        names.extend(self.arrows.iter().map(|a| a.name.as_str()));
        let mut sorted = names.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(QuiverError::DuplicateName(w[0].to_string()));
            }
        }
        for rel in &self.relations {
            let mut signature: Option<(usize, usize)> = None;
            if rel.terms.is_empty() {
                return Err(QuiverError::MalformedPath("empty relation".into()));
            }
            for (_, path) in &rel.terms {
                if path.len() < 2 {
                    return Err(QuiverError::MalformedPath(format!(
                        "{} (length {} < 2)",
                        self.render_path(path),
                        path.len()
                    )));
                }
                if !self.is_composable(path) {
                    return Err(QuiverError::MalformedPath(self.render_path(path)));
                }
                let sig = (
                    self.source_of_path(path).unwrap(),
                    self.target_of_path(path).unwrap(),
                );
                match signature {
                    None => signature = Some(sig),
                    Some(s) if s != sig => {
                        return Err(QuiverError::MalformedPath(format!(
                            "{}: terms are not parallel",
                            self.render_path(path)
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn render_path(&self, path: &[usize]) -> String {
        if path.is_empty() {
            return "(trivial)".into();
        }
        path.iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Vertex out-degrees and in-degrees; used by the interval provider to
    /// recognize uniserial (Nakayama-type) algebras.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut outd = vec![0; self.vertices.len()];
        let mut ind = vec![0; self.vertices.len()];
        for a in &self.arrows {
            outd[a.from] += 1;
            ind[a.to] += 1;
        }
        (outd, ind)
    }
}

/// A path seen during basis construction, with cached endpoints and its
/// rank under the canonical order (length, then arrow names lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { arrows: vec![], source: v, target: v }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Canonical path order: by length, then lexicographically by arrow names.
pub fn path_order_key(q: &BoundQuiver, p: &Path) -> (usize, Vec<String>, usize) {
    (
        p.len(),
        p.arrows.iter().map(|&a| q.arrows[a].name.clone()).collect(),
        p.source,
    )
}

/// All paths of each length `0..=max_len`, grouped by length.
pub fn paths_by_length(q: &BoundQuiver, max_len: usize) -> Vec<Vec<Path>> {
    let mut by_len: Vec<Vec<Path>> = Vec::with_capacity(max_len + 1);
    by_len.push((0..q.vertices.len()).map(Path::trivial).collect());
    for len in 1..=max_len {
        let mut next = Vec::new();
        for p in &by_len[len - 1] {
            for (ai, arrow) in q.arrows.iter().enumerate() {
                if arrow.from == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { arrows, source: p.source, target: arrow.to });
                }
            }
        }
        let keyed: Vec<(usize, Vec<String>, usize)> =
            next.iter().map(|p| path_order_key(q, p)).collect();
        let mut idx: Vec<usize> = (0..next.len()).collect();
        idx.sort_by(|&a, &b| keyed[a].cmp(&keyed[b]));
        by_len.push(idx.into_iter().map(|i| next[i].clone()).collect());
    }
    by_len
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;

    pub fn a2() -> BoundQuiver {
        BoundQuiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { name: "a".into(), from: 0, to: 1 }],
            relations: vec![],
        }
    }

    #[test]
    fn path_enumeration_a2() {
        let q = a2();
        let paths = paths_by_length(&q, 3);
        assert_eq!(paths[0].len(), 2);
        assert_eq!(paths[1].len(), 1);
        assert_eq!(paths[2].len(), 0);
    }

    #[test]
    fn loop_paths_grow() {
        let q = BoundQuiver {
            vertices: vec!["*".into()],
            arrows: vec![Arrow { name: "x".into(), from: 0, to: 0 }],
            relations: vec![],
        };
        let paths = paths_by_length(&q, 5);
        assert!(paths.iter().skip(1).all(|lvl| lvl.len() == 1));
    }

    #[test]
    fn rejects_noncomposable_relation() {
        let mut q = a2();
        let f = GroundField::new_prime(101).unwrap();
        q.relations.push(Relation { terms: vec![(f.one(), vec![0, 0])] });
        assert!(matches!(q.validate(), Err(QuiverError::MalformedPath(_))));
    }

    #[test]
    fn rejects_short_relation() {
        let mut q = a2();
        let f = GroundField::new_prime(101).unwrap();
        q.relations.push(Relation { terms: vec![(f.one(), vec![0])] });
        assert!(matches!(q.validate(), Err(QuiverError::MalformedPath(_))));
    }
}
