//! Boundary-matrix reduction over the two-element field.

use crate::rips::SimplexTree;

const NONE: u32 = u32::MAX;

/// Column reduction strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Left-to-right column additions over every column.
    Standard,
    /// Reduces from the highest dimension down and zeroes the columns of
    /// simplices already known to be paired (clearing).
    #[default]
    Twist,
}

/// Filtration-ordered boundary matrix of the simplices up to `top_dim`.
pub(crate) struct BoundaryMatrix {
    pub ids: Vec<u32>,
    pub dims: Vec<usize>,
    pub columns: Vec<Vec<u32>>,
}

impl BoundaryMatrix {
    pub fn new(tree: &SimplexTree, top_dim: usize) -> Self {
        let ids: Vec<u32> =
            tree.filtration_order().into_iter().filter(|&id| tree.dim_of(id) <= top_dim).collect();
        let mut position = vec![NONE; tree.len()];
        for (pos, &id) in ids.iter().enumerate() {
            position[id as usize] = pos as u32;
        }
        let mut verts = Vec::new();
        let mut face = Vec::new();
        let mut dims = Vec::with_capacity(ids.len());
        let columns = ids
            .iter()
            .map(|&id| {
                tree.vertices_of(id, &mut verts);
                dims.push(verts.len() - 1);
                if verts.len() == 1 {
                    return Vec::new();
                }
                let mut col: Vec<u32> = (0..verts.len())
                    .map(|skip| {
                        face.clear();
                        face.extend(verts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                        let face_id = tree.find(&face).expect("simplex tree is closed under faces");
                        position[face_id as usize]
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        BoundaryMatrix { ids, dims, columns }
    }
}

/// Birth/death column pairs plus the essential (never killed) columns.
#[derive(Debug, Default)]
pub(crate) struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

fn add_into(target: &mut Vec<u32>, other: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < other.len() {
        match target[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&target[i..]);
    scratch.extend_from_slice(&other[j..]);
    std::mem::swap(target, scratch);
}

pub(crate) fn reduce(mut matrix: BoundaryMatrix, algorithm: Reduction) -> Pairing {
    let n = matrix.columns.len();
    let mut owner = vec![NONE; n];
    let mut scratch = Vec::new();
    let mut reduce_column = |j: usize, columns: &mut Vec<Vec<u32>>, owner: &mut Vec<u32>| {
        let mut col = std::mem::take(&mut columns[j]);
        while let Some(&low) = col.last() {
            match owner[low as usize] {
                NONE => {
                    owner[low as usize] = j as u32;
                    break;
                }
                k => add_into(&mut col, &columns[k as usize], &mut scratch),
            }
        }
        columns[j] = col;
    };

    match algorithm {
        Reduction::Standard => {
            for j in 0..n {
                reduce_column(j, &mut matrix.columns, &mut owner);
            }
        }
        Reduction::Twist => {
            let top = matrix.dims.iter().copied().max().unwrap_or(0);
            for dim in (1..=top).rev() {
                for j in 0..n {
                    if matrix.dims[j] != dim || matrix.columns[j].is_empty() {
                        continue;
                    }
                    reduce_column(j, &mut matrix.columns, &mut owner);
                    if let Some(&low) = matrix.columns[j].last() {
                        matrix.columns[low as usize].clear();
                    }
                }
            }
        }
    }

    let mut pairing = Pairing::default();
    let mut paired = vec![false; n];
    for (low, &death) in owner.iter().enumerate() {
        if death != NONE {
            pairing.pairs.push((low, death as usize));
            paired[low] = true;
            paired[death as usize] = true;
        }
    }
    pairing.essential = (0..n).filter(|&j| !paired[j]).collect();
    pairing
}
