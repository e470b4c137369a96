//! Diagrams over finite categories.

use super::{FiniteCategory, HocolimError};
use crate::complexes::SimplicialComplex;
use crate::homalg::{ChainComplex, ChainMap};

/// A functor from a finite category to integral chain complexes. Every
/// value carries the same coefficient group; a value is read as zero above
/// its top degree.
#[derive(Clone, Debug)]
pub struct ChainDiagram {
    shape: FiniteCategory,
    values: Vec<ChainComplex>,
    arrows: Vec<ChainMap>,
}

impl ChainDiagram {
    /// Checks that every arrow is a chain map between the right values,
    /// that identities go to identities, and that composites go to
    /// composites (on the whole composition table).
    pub fn new(shape: FiniteCategory, values: Vec<ChainComplex>, arrows: Vec<ChainMap>) -> Result<Self, HocolimError> {
        let bad = |m: String| Err(HocolimError::NotFunctorial(m));
        if values.len() != shape.object_count() || arrows.len() != shape.morphisms().len() {
            return bad("one value per object and one arrow per morphism required".into());
        }
        if values.windows(2).any(|w| w[0].coeff() != w[1].coeff()) {
            return bad("values have different coefficients".into());
        }
        for (f, m) in shape.morphisms().iter().enumerate() {
            let (s, t) = (&values[m.source], &values[m.target]);
            if arrows[f].top() != s.top().min(t.top()) {
                return bad(format!("arrow {f} has {} components", arrows[f].top() + 1));
            }
            arrows[f].validate(s, t).map_err(|e| HocolimError::NotFunctorial(format!("arrow {f}: {e}")))?;
        }
        for o in 0..shape.object_count() {
            let id = ChainMap::identity(&values[o]).components()[..=arrows[shape.identity(o)].top()].to_vec();
            if arrows[shape.identity(o)].components() != id.as_slice() {
                return bad(format!("identity of object {o} is not sent to the identity"));
            }
        }
        for f in 0..shape.morphisms().len() {
            for &g in shape.outgoing(shape.morphism(f).target) {
                let gf = shape.compose(f, g).expect("composable");
                let composite = arrows[f].compose(&arrows[g]);
                let top = composite.top().min(arrows[gf].top());
                if composite.components()[..=top] != arrows[gf].components()[..=top] {
                    return bad(format!("composite of morphisms {f} and {g}"));
                }
            }
        }
        Ok(Self { shape, values, arrows })
    }

    /// A diagram on one object.
    pub fn single(value: ChainComplex) -> Self {
        let id = ChainMap::identity(&value);
        Self { shape: FiniteCategory::point(), values: vec![value], arrows: vec![id] }
    }

    pub fn shape(&self) -> &FiniteCategory {
        &self.shape
    }

    pub fn values(&self) -> &[ChainComplex] {
        &self.values
    }

    pub fn value(&self, o: usize) -> &ChainComplex {
        &self.values[o]
    }

    pub fn arrow(&self, f: usize) -> &ChainMap {
        &self.arrows[f]
    }
}

/// A functor to subcomplexes of a fixed ambient complex whose arrows are
/// the inclusions. Functoriality is automatic; only the inclusions
/// themselves are checked.
#[derive(Clone, Debug)]
pub struct SpaceDiagram {
    ambient: SimplicialComplex,
    shape: FiniteCategory,
    values: Vec<SimplicialComplex>,
}

impl SpaceDiagram {
    pub fn new(ambient: SimplicialComplex, shape: FiniteCategory, values: Vec<SimplicialComplex>) -> Result<Self, HocolimError> {
        if values.len() != shape.object_count() {
            return Err(HocolimError::NotFunctorial("one value per object required".into()));
        }
        for (o, v) in values.iter().enumerate() {
            if v.vertex_count() != ambient.vertex_count() || !v.is_subcomplex_of(&ambient) {
                return Err(HocolimError::NotFunctorial(format!("value {o} is not a subcomplex of the ambient complex")));
            }
        }
        for (f, m) in shape.morphisms().iter().enumerate() {
            if !values[m.source].is_subcomplex_of(&values[m.target]) {
                return Err(HocolimError::NotFunctorial(format!("morphism {f} is not an inclusion")));
            }
        }
        Ok(Self { ambient, shape, values })
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn shape(&self) -> &FiniteCategory {
        &self.shape
    }

    pub fn values(&self) -> &[SimplicialComplex] {
        &self.values
    }

    pub fn value(&self, o: usize) -> &SimplicialComplex {
        &self.values[o]
    }
}
