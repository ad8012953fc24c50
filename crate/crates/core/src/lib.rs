//! Bootstrap ARDL cointegration analysis for short daily time series.
//!
//! The crate covers the whole workflow: a date-indexed [`series::TimeSeries`]
//! model, an OLS engine ([`regress`]), ADF/PP unit root tests ([`unitroot`]),
//! UECM estimation and lag selection ([`ardl`]), the residual bootstrap for
//! the overall F, t-dependent and F-independent statistics ([`bootstrap`]),
//! the post-estimation diagnostic battery ([`diagnostics`]), ingestion of
//! ECDC/EPU files ([`ingest`]) and the study runner ([`pipeline`]).

#![allow(clippy::needless_range_loop)]

pub mod ardl;
pub mod bootstrap;
pub mod diagnostics;
pub mod dist;
pub mod error;
pub mod ingest;
pub mod linalg;
pub mod pipeline;
pub mod regress;
pub mod series;
pub mod simulate;
pub mod unitroot;

pub use error::{Error, ErrorKind, Result};
