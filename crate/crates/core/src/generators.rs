//! Canonical inputs: tropical lines and planes, the union of two tropical
//! planes along a ray, Bergman fans and normal fans of cubes.

use crate::matroid::{bergman_fine, Matroid};
use crate::polyhedral::{Cell, Complex};
use crate::tropical::normal_fan;
use crate::{Error, QVector, Result};

fn all_pairs(rays: &[usize]) -> Vec<Cell> {
    let mut cells = Vec::new();
    for (i, &a) in rays.iter().enumerate() {
        for &b in &rays[i + 1..] {
            cells.push(Cell::cone(vec![a, b]));
        }
    }
    cells
}

/// Rays `e1, e2, -e1-e2`, one cone each.
pub fn tropical_line() -> Complex {
    let rays = vec![
        QVector::from_ints(&[1, 0]),
        QVector::from_ints(&[0, 1]),
        QVector::from_ints(&[-1, -1]),
    ];
    let cells = (0..3).map(|i| Cell::cone(vec![i])).collect();
    Complex::new(2, vec![], rays, vec![], cells, None).expect("fixed input")
}

/// The standard tropical plane in `R^3`: cones over all pairs of
/// `e1, e2, e3, -e1-e2-e3`.
pub fn tropical_plane() -> Complex {
    let rays = vec![
        QVector::from_ints(&[1, 0, 0]),
        QVector::from_ints(&[0, 1, 0]),
        QVector::from_ints(&[0, 0, 1]),
        QVector::from_ints(&[-1, -1, -1]),
    ];
    Complex::new(3, vec![], rays, vec![], all_pairs(&[0, 1, 2, 3]), None).expect("fixed input")
}

/// Two standard tropical planes in `R^5`, one in the span of `e1, e2, e3`
/// and one in the span of `e1, e4, e5`, glued along the ray `e1`.
///
/// Rays are ordered `e1, e2, e3, -e1-e2-e3, e4, e5, -e1-e4-e5`.
pub fn two_planes() -> Complex {
    let rays = vec![
        QVector::from_ints(&[1, 0, 0, 0, 0]),
        QVector::from_ints(&[0, 1, 0, 0, 0]),
        QVector::from_ints(&[0, 0, 1, 0, 0]),
        QVector::from_ints(&[-1, -1, -1, 0, 0]),
        QVector::from_ints(&[0, 0, 0, 1, 0]),
        QVector::from_ints(&[0, 0, 0, 0, 1]),
        QVector::from_ints(&[-1, 0, 0, -1, -1]),
    ];
    let mut cells = all_pairs(&[0, 1, 2, 3]);
    cells.extend(all_pairs(&[0, 4, 5, 6]));
    Complex::new(5, vec![], rays, vec![], cells, None).expect("fixed input")
}

/// Outer normal fan of the cube `[-1, 1]^d`: the `2^d` closed orthants.
pub fn normal_fan_cube(d: usize) -> Result<Complex> {
    if d == 0 || d > 12 {
        return Err(Error::DegenerateInput(format!(
            "cube dimension {d} outside 1..=12"
        )));
    }
    let points: Vec<QVector> = (0..1u32 << d)
        .map(|mask| {
            let v: Vec<i64> = (0..d).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
            QVector::from_ints(&v)
        })
        .collect();
    normal_fan(&points)
}

pub fn bergman_uniform(r: usize, n: usize) -> Result<Complex> {
    bergman_fine(&Matroid::uniform(r, n)?)
}

pub fn bergman_graphic(edges: &[(usize, usize)]) -> Result<Complex> {
    bergman_fine(&Matroid::graphic(edges)?)
}

/// Parses an edge list such as `"0-1,1-2,0-2"`.
pub fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|e| !e.trim().is_empty())
        .map(|e| {
            let bad = || Error::Parse(format!("bad edge {e:?}, expected u-v"));
            let (a, b) = e.trim().split_once('-').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn usize_arg(args: &[&str], i: usize, name: &str) -> Result<usize> {
    let a = args
        .get(i)
        .ok_or_else(|| Error::Parse(format!("missing parameter {name}")))?;
    a.parse()
        .map_err(|_| Error::Parse(format!("{name} must be a nonnegative integer, got {a:?}")))
}

/// Builds a generated complex by name. Kinds needing a file (such as the
/// normal fan of a point list) are handled by callers.
pub fn generate(kind: &str, args: &[&str]) -> Result<Complex> {
    match kind {
        "two-planes" => Ok(two_planes()),
        "tropical-plane" => Ok(tropical_plane()),
        "tropical-line" => Ok(tropical_line()),
        "bergman-uniform" => bergman_uniform(usize_arg(args, 0, "r")?, usize_arg(args, 1, "n")?),
        "bergman-graphic" => {
            let edges = args
                .first()
                .ok_or_else(|| Error::Parse("missing edge list".into()))?;
            bergman_graphic(&parse_edges(edges)?)
        }
        "normal-fan-cube" => normal_fan_cube(usize_arg(args, 0, "d")?),
        other => Err(Error::UnknownKind(other.to_string())),
    }
}
