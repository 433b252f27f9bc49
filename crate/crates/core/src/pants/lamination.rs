//! The maximal lamination `{h_AB, h_BC, h_CA, A, B, C}` of the pants and the
//! lifts used to evaluate its invariants.
//!
//! Each biinfinite leaf is lifted to a geodesic with its two adjacent ideal
//! triangles, giving the quadruple (terminal, start, left vertex, right
//! vertex). Each of the two ideal triangles is lifted with vertex `∞` first
//! and the others in clockwise order.

use std::fmt;

use super::{PantsParams, PantsRep, ProjPoint, Mat2};
use crate::error::Result;
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Leaf {
    HAb,
    HBc,
    HCa,
}

impl Leaf {
    pub const ALL: [Leaf; 3] = [Leaf::HAb, Leaf::HBc, Leaf::HCa];

    pub fn name(self) -> &'static str {
        match self {
            Leaf::HAb => "h_AB",
            Leaf::HBc => "h_BC",
            Leaf::HCa => "h_CA",
        }
    }

    /// Column-name fragment, e.g. `hAB`.
    pub fn short(self) -> &'static str {
        match self {
            Leaf::HAb => "hAB",
            Leaf::HBc => "hBC",
            Leaf::HCa => "hCA",
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Triangle {
    T0,
    T1,
}

impl Triangle {
    pub const ALL: [Triangle; 2] = [Triangle::T0, Triangle::T1];

    pub fn name(self) -> &'static str {
        match self {
            Triangle::T0 => "T0",
            Triangle::T1 => "T1",
        }
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Boundary {
    A,
    B,
    C,
}

impl Boundary {
    pub const ALL: [Boundary; 3] = [Boundary::A, Boundary::B, Boundary::C];

    pub fn name(self) -> &'static str {
        match self {
            Boundary::A => "A",
            Boundary::B => "B",
            Boundary::C => "C",
        }
    }

    pub fn generator<F: Field>(self, rep: &PantsRep<F>) -> &Mat2<F> {
        match self {
            Boundary::A => &rep.a,
            Boundary::B => &rep.b,
            Boundary::C => &rep.c,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Endpoints of a lifted leaf and the far vertices of its two adjacent triangles.
#[derive(Debug, Clone)]
pub struct LeafQuadruple<F> {
    pub terminal: ProjPoint<F>,
    pub start: ProjPoint<F>,
    pub left: ProjPoint<F>,
    pub right: ProjPoint<F>,
}

impl<F: Field> PartialEq for LeafQuadruple<F> {
    fn eq(&self, other: &Self) -> bool {
        self.points() == other.points()
    }
}

impl<F: Field> LeafQuadruple<F> {
    pub fn points(&self) -> [&ProjPoint<F>; 4] {
        [&self.terminal, &self.start, &self.left, &self.right]
    }
}

/// Whether a leaf spirals onto a boundary curve at its terminal end or its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Toward,
    Away,
}

/// Leaves and triangles spiraling onto one boundary component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub leaves: [(Leaf, Direction); 2],
    /// Triangle and the index of its vertex (in the clockwise triple) lying on a
    /// lift of the boundary.
    pub vertices: [(Triangle, usize); 2],
}

pub fn leaf_quadruple<F: Field>(leaf: Leaf, params: &PantsParams<F>) -> Result<LeafQuadruple<F>> {
    let zero = ProjPoint::finite(F::zero());
    let one = ProjPoint::finite(F::one());
    let inf = ProjPoint::infinity();
    Ok(match leaf {
        // a^{-1}(1) = -βγ
        Leaf::HAb => LeafQuadruple { terminal: inf, start: zero, left: ProjPoint::finite(-params.beta_gamma()), right: one },
        // b^{-1}(∞) = β/(β+γ)
        Leaf::HBc => {
            let z = params.beta().checked_div(&(params.beta().clone() + params.gamma().clone()))?;
            LeafQuadruple { terminal: zero, start: one, left: ProjPoint::finite(z), right: inf }
        }
        // a(0) = α²βγ + 1
        Leaf::HCa => {
            let z = params.alpha().clone() * params.alpha().clone() * params.beta_gamma() + F::one();
            LeafQuadruple { terminal: one, start: inf, left: ProjPoint::finite(z), right: zero }
        }
    })
}

/// Clockwise vertex triple of a lifted triangle, starting at `∞`.
pub fn triangle_vertices<F: Field>(triangle: Triangle, params: &PantsParams<F>) -> [ProjPoint<F>; 3] {
    let zero = ProjPoint::finite(F::zero());
    match triangle {
        Triangle::T0 => [ProjPoint::infinity(), ProjPoint::finite(F::one()), zero],
        Triangle::T1 => [ProjPoint::infinity(), zero, ProjPoint::finite(-params.beta_gamma())],
    }
}

/// Incidence table. A leaf is `Toward` a boundary when its terminal point is the
/// attracting fixed point of the boundary generator, and `Away` when its start
/// point is; each triangle has exactly one vertex on a lift of each boundary.
pub fn boundary_incidence(boundary: Boundary) -> Incidence {
    use Direction::*;
    match boundary {
        Boundary::A => Incidence {
            leaves: [(Leaf::HAb, Toward), (Leaf::HCa, Away)],
            vertices: [(Triangle::T0, 0), (Triangle::T1, 0)],
        },
        Boundary::B => Incidence {
            leaves: [(Leaf::HAb, Away), (Leaf::HBc, Toward)],
            vertices: [(Triangle::T0, 2), (Triangle::T1, 1)],
        },
        Boundary::C => Incidence {
            leaves: [(Leaf::HBc, Away), (Leaf::HCa, Toward)],
            vertices: [(Triangle::T0, 1), (Triangle::T1, 2)],
        },
    }
}
