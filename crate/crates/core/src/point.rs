use thiserror::Error;

/// A point in problem space: a finite real vector of dimension `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PointError {
    #[error("a point must have dimension >= 1")]
    Empty,
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, PointError> {
        if coords.is_empty() {
            return Err(PointError::Empty);
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(PointError::NonFinite { index });
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert_eq!(Point::new(vec![]), Err(PointError::Empty));
        assert_eq!(
            Point::new(vec![1.0, f64::NAN]),
            Err(PointError::NonFinite { index: 1 })
        );
        assert_eq!(
            Point::new(vec![f64::INFINITY]),
            Err(PointError::NonFinite { index: 0 })
        );
    }

    #[test]
    fn accepts_finite_vectors() {
        let p = Point::new(vec![1.0, -2.5]).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p[1], -2.5);
    }
}
