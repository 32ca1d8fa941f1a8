use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{DeclaredCounts, Facet, Polytope, PolytopeError};
use crate::numfield::FieldScalar;

/// On-disk polytope description.
///
/// Each normal coordinate `a + b√d` is written as four integers
/// `[a_num, a_den, b_num, b_den]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub name: String,
    pub dimension: usize,
    pub discriminant: u32,
    pub facets: Vec<RawFacet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<Vec<(u32, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim2: Option<Vec<(u32, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<DeclaredCounts>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFacet {
    pub id: u32,
    pub normal: Vec<[i64; 4]>,
}

impl PolytopeFile {
    pub fn into_polytope(self) -> Result<Polytope, PolytopeError> {
        let d = self.discriminant;
        let facets = self
            .facets
            .into_iter()
            .map(|f| {
                let normal = f
                    .normal
                    .iter()
                    .map(|&[an, ad, bn, bd]| FieldScalar::from_parts(an, ad, bn, bd, d))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|source| PolytopeError::Normal { id: f.id, source })?;
                Ok(Facet { id: f.id, normal })
            })
            .collect::<Result<Vec<_>, PolytopeError>>()?;
        Polytope::new(self.name, self.dimension, d, facets, self.adjacency, self.codim2, self.counts)
    }

    pub fn from_polytope(p: &Polytope) -> Result<Self, PolytopeError> {
        let int = |x: &num_bigint::BigInt| {
            x.to_i64().ok_or_else(|| PolytopeError::Parse(format!("normal entry {x} exceeds 64 bits")))
        };
        let facets = p
            .facets()
            .iter()
            .map(|f| {
                let normal = f
                    .normal
                    .iter()
                    .map(|x| {
                        let (a, b) = (x.rational_part(), x.surd_part());
                        Ok([int(a.numer())?, int(a.denom())?, int(b.numer())?, int(b.denom())?])
                    })
                    .collect::<Result<Vec<_>, PolytopeError>>()?;
                Ok(RawFacet { id: f.id, normal })
            })
            .collect::<Result<Vec<_>, PolytopeError>>()?;
        let ids = |&(i, j): &(usize, usize)| (p.facet_id(i), p.facet_id(j));
        Ok(Self {
            name: p.name().to_string(),
            dimension: p.dimension(),
            discriminant: p.discriminant(),
            facets,
            adjacency: None,
            codim2: Some(p.codim2_faces().iter().map(ids).collect()),
            counts: p.declared_counts(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::builtin_octahedron;

    #[test]
    fn octahedron_file_round_trip() {
        let p = builtin_octahedron();
        let text = serde_json::to_string_pretty(&p.to_file().unwrap()).unwrap();
        let q = Polytope::from_json(&text).unwrap();
        assert_eq!(q.facet_count(), 8);
        assert_eq!(q.codim2_faces(), p.codim2_faces());
        assert_eq!(q.declared_counts(), p.declared_counts());
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(Polytope::from_json("{"), Err(PolytopeError::Parse(_))));
        let short = r#"{"name":"x","dimension":2,"discriminant":1,
            "facets":[{"id":1,"normal":[[1,1,0,1],[0,1,0,1]]}]}"#;
        assert!(matches!(Polytope::from_json(short), Err(PolytopeError::NormalLength { .. })));
        let zero_den = r#"{"name":"x","dimension":1,"discriminant":1,
            "facets":[{"id":1,"normal":[[1,0,0,1],[0,1,0,1]]}]}"#;
        assert!(matches!(Polytope::from_json(zero_den), Err(PolytopeError::Normal { .. })));
        let timelike = r#"{"name":"x","dimension":1,"discriminant":1,
            "facets":[{"id":1,"normal":[[0,1,0,1],[1,1,0,1]]}]}"#;
        assert!(matches!(Polytope::from_json(timelike), Err(PolytopeError::Normal { .. })));
    }

    #[test]
    fn facet_count_cross_check() {
        let p = builtin_octahedron();
        let mut f = p.to_file().unwrap();
        f.counts = Some(DeclaredCounts { ideal_vertices: 6, real_vertices: 0, facets: 9 });
        assert!(matches!(f.into_polytope(), Err(PolytopeError::FacetCount { declared: 9, found: 8 })));
    }
}
