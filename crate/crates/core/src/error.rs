use thiserror::Error;

/// Errors raised by the quadrisection routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),

    #[error("inversion is undefined at the center of the circle")]
    InversionAtCenter,

    #[error("point ({h}, {ht}) is outside the quadrant h >= 1/2, ht > 0")]
    OutsideQuadrant { h: f64, ht: f64 },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("x = {x} is not a root of the perpendicularity equation (|residual| = {residual:e})")]
    NotARoot { x: f64, residual: f64 },

    #[error("negative radicand in {term}: {value}")]
    NegativeRadicand { term: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
