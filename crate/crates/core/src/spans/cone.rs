use rand::Rng;

use crate::algebra::{HomogPoly, LinearForm, Rational};
use crate::error::{Error, Result};
use crate::geometry::{linear_form_for, random_plane, PlaneSpan, PointConfiguration};

/// Redraws allowed when a random plane passes through a point of `S`.
pub const DEGENERATE_REDRAWS: usize = 100;

/// One cone polynomial together with the data that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSample {
    pub plane: PlaneSpan,
    pub forms: Vec<LinearForm>,
    pub poly: HomogPoly<Rational>,
}

/// Product of the forms `det[x, P_i, Q_1, ..., Q_{n-1}]` over the points of
/// `S`.
pub fn cone_polynomial(s: &PointConfiguration, plane: &PlaneSpan) -> Result<ConeSample> {
    if plane.n() != s.n() {
        return Err(Error::InvalidPlane(format!(
            "plane lives in P^{}, configuration in P^{}",
            plane.n(),
            s.n()
        )));
    }
    let forms = s
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let l = linear_form_for(p, plane)?;
            if l.is_degenerate() {
                Err(Error::DegenerateSample { index: i })
            } else {
                Ok(l)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = forms
        .iter()
        .map(|l| l.to_poly("x"))
        .try_fold(None::<HomogPoly<Rational>>, |acc, f| {
            Ok::<_, Error>(Some(match acc {
                None => f,
                Some(a) => a.multiply(&f)?,
            }))
        })?
        .expect("configuration is nonempty");
    Ok(ConeSample {
        plane: plane.clone(),
        forms,
        poly,
    })
}

/// A cone polynomial through a random plane, redrawing planes that meet `S`.
pub fn sample_cone<R: Rng>(s: &PointConfiguration, rng: &mut R, bound: u64) -> Result<ConeSample> {
    let mut last = None;
    for _ in 0..DEGENERATE_REDRAWS {
        let plane = random_plane(rng, s.n(), bound)?;
        match cone_polynomial(s, &plane) {
            Err(e @ Error::DegenerateSample { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one draw"))
}
