//! Reading input files. Every file read is digested for the report.

use std::path::Path;
use std::sync::Arc;

use perverse_cells::complex::{parse_complex_with, ComplexWarning, ParseOptions};
use perverse_cells::{AlgebraDocument, Perversity, QuadraticQuiverAlgebra, SimplicialComplex};
use serde_json::Value;

use crate::report::InputDigest;

/// An input problem; reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub fn input_error(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

#[derive(Debug, Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
    pub strict: bool,
}

/// What a JSON input turned out to be.
pub enum Document {
    Complex(Arc<SimplicialComplex>),
    Algebra(QuadraticQuiverAlgebra),
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String, InputError> {
        let bytes = std::fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        self.digests.push(InputDigest::of(&path.display().to_string(), &bytes));
        String::from_utf8(bytes).map_err(|_| input_error(format!("{}: not UTF-8", path.display())))
    }

    pub fn complex_from_text(&self, text: &str) -> Result<(Arc<SimplicialComplex>, Vec<ComplexWarning>), InputError> {
        let (x, warnings) = parse_complex_with(text, ParseOptions { reject_non_maximal: self.strict })?;
        Ok((Arc::new(x), warnings))
    }

    pub fn complex(&mut self, path: &Path) -> Result<(Arc<SimplicialComplex>, Vec<ComplexWarning>), InputError> {
        let text = self.read(path)?;
        self.complex_from_text(&text)
    }

    /// A complex document or an algebra document, told apart by whether it
    /// lists arrows.
    pub fn complex_or_algebra(&mut self, path: &Path) -> Result<Document, InputError> {
        let text = self.read(path)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        if value.get("arrows").is_some() {
            Ok(Document::Algebra(AlgebraDocument::parse(&text)?.to_algebra()?))
        } else {
            Ok(Document::Complex(self.complex_from_text(&text)?.0))
        }
    }

    pub fn algebra(&mut self, path: &Path) -> Result<QuadraticQuiverAlgebra, InputError> {
        let text = self.read(path)?;
        Ok(AlgebraDocument::parse(&text)?.to_algebra()?)
    }
}

/// `--perversity` against a complex; `top` when absent.
pub fn perversity(flag: Option<&str>, complex: &SimplicialComplex) -> Result<Perversity, InputError> {
    let p = Perversity::parse(flag.unwrap_or("top"), complex.dimension())?;
    Ok(p.restrict_to(complex.dimension())?)
}
