use super::{Moments, PdfSpec, Region, Sampler};
use crate::error::{Error, Result};
use rand::Rng;

/// An object `(R, f)`: a box region and a density positive on it, with its
/// moments computed once at construction.
#[derive(Clone, Debug)]
pub struct UncertainObject {
    id: String,
    region: Region,
    pdf: PdfSpec,
    moments: Moments,
    sampler: Sampler,
}

impl UncertainObject {
    pub fn new(id: impl Into<String>, pdf: PdfSpec) -> Result<Self> {
        let moments = pdf.moments()?;
        let region = pdf.support()?;
        let sampler = Sampler::new(&pdf)?;
        Ok(UncertainObject {
            id: id.into(),
            region,
            pdf,
            moments,
            sampler,
        })
    }

    /// Deterministic object located at `p`.
    pub fn point(id: impl Into<String>, p: &[f64]) -> Result<Self> {
        Self::new(id, PdfSpec::point_mass(p))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn pdf(&self) -> &PdfSpec {
        &self.pdf
    }

    pub fn moments(&self) -> &Moments {
        &self.moments
    }

    pub fn dim(&self) -> usize {
        self.moments.dim()
    }

    pub fn mu(&self) -> &[f64] {
        &self.moments.mu
    }

    pub fn mu2(&self) -> &[f64] {
        &self.moments.mu2
    }

    /// σ²(o), the summed per-dimension variance.
    pub fn total_var(&self) -> f64 {
        self.moments.total_var
    }

    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) -> Result<()> {
        self.sampler.draw_into(&self.pdf, rng, out)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.sample_into(rng, &mut out)?;
        Ok(out)
    }
}

/// A set of uncertain objects of equal dimensionality, optionally paired
/// with reference class labels.
#[derive(Clone, Debug)]
pub struct Dataset {
    objects: Vec<UncertainObject>,
    labels: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(objects: Vec<UncertainObject>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(first) = objects.first() {
            let m = first.dim();
            for o in &objects {
                if o.dim() != m {
                    return Err(Error::dims(m, o.dim()));
                }
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != objects.len() {
                return Err(Error::Argument(format!(
                    "{} labels for {} objects",
                    labels.len(),
                    objects.len()
                )));
            }
        }
        Ok(Dataset { objects, labels })
    }

    /// Deterministic points as point-mass objects with ids `"0"`, `"1"`, ….
    pub fn from_points(points: &[Vec<f64>], labels: Option<Vec<String>>) -> Result<Self> {
        let objects = points
            .iter()
            .enumerate()
            .map(|(i, p)| UncertainObject::point(i.to_string(), p))
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(objects, labels)
    }

    pub fn objects(&self) -> &[UncertainObject] {
        &self.objects
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Dimensionality, 0 for an empty dataset.
    pub fn dim(&self) -> usize {
        self.objects.first().map_or(0, UncertainObject::dim)
    }

    /// Sub-dataset of the first `n` objects.
    pub fn truncated(&self, n: usize) -> Dataset {
        let n = n.min(self.len());
        Dataset {
            objects: self.objects[..n].to_vec(),
            labels: self.labels.as_ref().map(|l| l[..n].to_vec()),
        }
    }

    /// Sub-dataset of the objects at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Dataset> {
        if let Some(&i) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::Argument(format!(
                "index {i} out of range for {} objects",
                self.len()
            )));
        }
        Ok(Dataset {
            objects: indices.iter().map(|&i| self.objects[i].clone()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i].clone()).collect()),
        })
    }

    pub fn moments(&self) -> impl Iterator<Item = &Moments> {
        self.objects.iter().map(UncertainObject::moments)
    }
}
