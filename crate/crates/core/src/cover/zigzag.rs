use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::CoverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ZigzagTemplate {
    CoherentCube,
    BadTimesCoherent,
}

impl ZigzagTemplate {
    pub const ALL: [ZigzagTemplate; 2] = [ZigzagTemplate::CoherentCube, ZigzagTemplate::BadTimesCoherent];

    /// Level of a corner before the offset is added.
    fn raw_level(self, x: u32) -> i32 {
        match self {
            ZigzagTemplate::CoherentCube => x.count_ones() as i32,
            ZigzagTemplate::BadTimesCoherent => ((x ^ (x >> 1)) & 1) as i32 + (x >> 2).count_ones() as i32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagRow {
    pub dim: usize,
    pub template: ZigzagTemplate,
    pub offset: i32,
    pub connected: bool,
}

fn connected_at(dim: usize, template: ZigzagTemplate, offset: i32) -> bool {
    let nv = 1usize << dim;
    let level = |x: u32| template.raw_level(x) + offset;
    let mut uf = UnionFind::<usize>::new(nv);
    let mut touched = vec![false; nv];
    for x in 0..nv as u32 {
        for d in 0..dim {
            let y = x | 1 << d;
            if y == x {
                continue;
            }
            if level(x).abs() <= 1 && level(y).abs() <= 1 {
                uf.union(x as usize, y as usize);
                touched[x as usize] = true;
                touched[y as usize] = true;
            }
        }
    }
    let mut root = None;
    for x in 0..nv {
        if level(x as u32) == 0 {
            touched[x] = true;
        }
        if touched[x] {
            let r = uf.find(x);
            if *root.get_or_insert(r) != r {
                return false;
            }
        }
    }
    true
}

/// Whether the edges between levels −1, 0, 1 of a `dim`-cube form a connected
/// graph through every level-0 corner, for every offset putting 0 in the level image.
pub fn check_zigzag(dim: usize, template: ZigzagTemplate) -> Result<bool, CoverError> {
    Ok(zigzag_rows(dim, template)?.iter().all(|r| r.connected))
}

fn zigzag_rows(dim: usize, template: ZigzagTemplate) -> Result<Vec<ZigzagRow>, CoverError> {
    if !(2..=9).contains(&dim) {
        return Err(CoverError::ZigzagDimension(dim));
    }
    let levels: Vec<i32> = (0..1u32 << dim).map(|x| template.raw_level(x)).collect();
    let (lo, hi) = (*levels.iter().min().unwrap(), *levels.iter().max().unwrap());
    Ok((-hi..=-lo)
        .map(|offset| ZigzagRow { dim, template, offset, connected: connected_at(dim, template, offset) })
        .collect())
}

/// Per (dim, template, offset) verdicts for `2..=max_dim`.
pub fn zigzag_table(max_dim: usize) -> Result<Vec<ZigzagRow>, CoverError> {
    if !(2..=9).contains(&max_dim) {
        return Err(CoverError::ZigzagDimension(max_dim));
    }
    let mut rows = Vec::new();
    for dim in 2..=max_dim {
        for template in ZigzagTemplate::ALL {
            rows.extend(zigzag_rows(dim, template)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_connected() {
        assert_eq!(check_zigzag(2, ZigzagTemplate::CoherentCube), Ok(true));
        assert_eq!(check_zigzag(2, ZigzagTemplate::BadTimesCoherent), Ok(true));
    }

    #[test]
    fn bad_template_levels() {
        let t = ZigzagTemplate::BadTimesCoherent;
        assert_eq!([0, 1, 2, 3].map(|x| t.raw_level(x)), [0, 1, 1, 0]);
        assert_eq!(t.raw_level(0b100), 1);
    }

    #[test]
    fn offsets_cover_level_image() {
        let rows = zigzag_rows(3, ZigzagTemplate::CoherentCube).unwrap();
        assert_eq!(rows.iter().map(|r| r.offset).collect::<Vec<_>>(), vec![-3, -2, -1, 0]);
    }

    #[test]
    fn out_of_range_dimension() {
        assert_eq!(check_zigzag(1, ZigzagTemplate::CoherentCube), Err(CoverError::ZigzagDimension(1)));
        assert!(zigzag_table(10).is_err());
    }

    #[test]
    fn middle_offset_is_connected() {
        assert!(connected_at(4, ZigzagTemplate::CoherentCube, -2));
        assert!(connected_at(4, ZigzagTemplate::BadTimesCoherent, -1));
    }
}
