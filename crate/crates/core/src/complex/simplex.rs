use std::collections::BTreeSet;
use std::fmt;

use super::Vertex;

/// A nonempty finite vertex set, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex<V>(Vec<V>);

impl<V: Vertex> Simplex<V> {
    /// Returns `None` for an empty vertex collection.
    pub fn new(vertices: impl IntoIterator<Item = V>) -> Option<Self> {
        let mut v: Vec<V> = vertices.into_iter().collect();
        v.sort();
        v.dedup();
        (!v.is_empty()).then_some(Simplex(v))
    }

    pub fn vertex(v: V) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[V] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, V> {
        self.0.iter()
    }

    /// Cardinality, `dim + 1`.
    pub fn card(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: &V) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex<V>) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    /// True when some vertex of the simplex lies in `set`.
    pub fn meets(&self, set: &BTreeSet<V>) -> bool {
        self.0.iter().any(|v| set.contains(v))
    }

    pub fn with_vertex(&self, v: V) -> Self {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Simplex(out)
    }

    pub fn union(&self, other: &Simplex<V>) -> Self {
        Simplex::new(self.0.iter().chain(other.0.iter()).cloned()).expect("nonempty")
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex<V>> + '_ {
        let n = self.0.len();
        assert!(n < usize::BITS as usize, "simplex too large to enumerate faces");
        (1usize..(1usize << n)).map(move |mask| {
            Simplex(self.0.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect())
        })
    }

    pub fn into_vec(self) -> Vec<V> {
        self.0
    }
}

impl<V: fmt::Display> fmt::Display for Simplex<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl<V: fmt::Debug> fmt::Debug for Simplex<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl<'a, V> IntoIterator for &'a Simplex<V> {
    type Item = &'a V;
    type IntoIter = std::slice::Iter<'a, V>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
