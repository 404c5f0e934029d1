//! Structured mesh connectivity graphs, used as stand-ins for finite element
//! meshes: a triangulated 2D grid, a tetrahedral 3D grid and the full
//! node coupling of a trilinear hexahedral 3D grid.

use crate::error::Result;
use crate::graph::{Graph, VertexId};

/// `nx × ny` nodes, every grid cell split into two triangles.
/// Interior nodes have degree 6.
pub fn triangle_mesh(nx: usize, ny: usize) -> Result<Graph> {
    let id = |x: usize, y: usize| (y * nx + x) as VertexId;
    let mut edges = Vec::new();
    for y in 0..ny {
        for x in 0..nx {
            if x + 1 < nx {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < ny {
                edges.push((id(x, y), id(x, y + 1)));
            }
            if x + 1 < nx && y + 1 < ny {
                edges.push((id(x, y), id(x + 1, y + 1)));
            }
        }
    }
    Graph::from_edges(nx * ny, edges)
}

fn grid_3d(n: [usize; 3], offsets: &[[usize; 3]]) -> Result<Graph> {
    let [nx, ny, nz] = n;
    let id = |x: usize, y: usize, z: usize| ((z * ny + y) * nx + x) as VertexId;
    let mut edges = Vec::new();
    for z in 0..nz {
        for y in 0..ny {
            for x in 0..nx {
                for &[dx, dy, dz] in offsets {
                    let (tx, ty, tz) = (x + dx, y + dy, z + dz);
                    if tx < nx && ty < ny && tz < nz {
                        edges.push((id(x, y, z), id(tx, ty, tz)));
                    }
                }
            }
        }
    }
    Graph::from_edges(nx * ny * nz, edges)
}

/// Cubes split into six tetrahedra sharing the main diagonal.
/// Interior nodes have degree 14.
pub fn tetrahedral_mesh(nx: usize, ny: usize, nz: usize) -> Result<Graph> {
    const STEPS: [[usize; 3]; 7] = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
    ];
    grid_3d([nx, ny, nz], &STEPS)
}

/// Every pair of nodes sharing a hexahedral cell is coupled (27-point
/// stencil). Interior nodes have degree 26.
pub fn hexahedral_mesh(nx: usize, ny: usize, nz: usize) -> Result<Graph> {
    // Half of the 26 neighbor offsets; the other half is covered by symmetry.
    // Offsets are shifted by +1 in x/y so negative steps fit in usize.
    let mut steps = Vec::new();
    for dz in 0..=1usize {
        for dy in 0..=2usize {
            for dx in 0..=2usize {
                let forward = dz == 1 || dy == 2 || (dy == 1 && dx == 2);
                if forward {
                    steps.push([dx, dy, dz]);
                }
            }
        }
    }
    let id = |x: usize, y: usize, z: usize| ((z * ny + y) * nx + x) as VertexId;
    let mut edges = Vec::new();
    for z in 0..nz {
        for y in 0..ny {
            for x in 0..nx {
                for &[dx, dy, dz] in &steps {
                    let (tx, ty, tz) = (x + dx, y + dy, z + dz);
                    if tx == 0 || ty == 0 {
                        continue;
                    }
                    let (tx, ty) = (tx - 1, ty - 1);
                    if tx < nx && ty < ny && tz < nz {
                        edges.push((id(x, y, z), id(tx, ty, tz)));
                    }
                }
            }
        }
    }
    Graph::from_edges(nx * ny * nz, edges)
}
