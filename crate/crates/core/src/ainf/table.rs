use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{AinfCategory, Chain};
use crate::pog::Pog;
use crate::scalars::{fmt_rational, CoeffMode, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInfo {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub weight: Rational,
}

/// A curved A∞-category given by finite tables.
///
/// Entries not stored are zero, except that an input tuple containing a
/// designated unit follows the strict unit rule unless overridden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CAinfCategory {
    pog: Pog,
    cutoff: Rational,
    epsilon: Rational,
    mode: CoeffMode,
    objects: Vec<String>,
    gens: Vec<GenInfo>,
    mu: BTreeMap<Vec<usize>, Chain<usize>>,
    curvature: BTreeMap<usize, Chain<usize>>,
    units: BTreeMap<usize, usize>,
}

impl CAinfCategory {
    pub fn new(pog: Pog, cutoff: Rational, epsilon: Rational, mode: CoeffMode) -> Result<Self> {
        if !cutoff.is_positive() {
            return Err(Error::NonPositiveCutoff(fmt_rational(&cutoff)));
        }
        if !epsilon.is_positive() || !pog.contains(&epsilon) {
            return Err(Error::Invalid(format!("energy gap {} must be a positive element of {}", fmt_rational(&epsilon), pog)));
        }
        Ok(CAinfCategory {
            pog,
            cutoff,
            epsilon,
            mode,
            objects: Vec::new(),
            gens: Vec::new(),
            mu: BTreeMap::new(),
            curvature: BTreeMap::new(),
            units: BTreeMap::new(),
        })
    }

    pub fn pog(&self) -> &Pog {
        &self.pog
    }

    pub fn add_object(&mut self, name: &str) -> Result<usize> {
        if self.objects.iter().any(|o| o == name) {
            return Err(Error::Invalid(format!("duplicate object {}", name)));
        }
        self.objects.push(name.to_string());
        Ok(self.objects.len() - 1)
    }

    pub fn add_gen(&mut self, name: &str, source: usize, target: usize, degree: i64, weight: Rational) -> Result<usize> {
        if source >= self.objects.len() || target >= self.objects.len() {
            return Err(Error::UnknownObject(name.to_string()));
        }
        if self.gens.iter().any(|g| g.name == name) {
            return Err(Error::Invalid(format!("duplicate generator {}", name)));
        }
        if weight.is_negative() || !self.pog.contains(&weight) {
            return Err(Error::OutsideCone(fmt_rational(&weight)));
        }
        self.gens.push(GenInfo { name: name.to_string(), source, target, degree, weight });
        Ok(self.gens.len() - 1)
    }

    pub fn set_unit(&mut self, object: usize, gen: usize) -> Result<()> {
        let g = self.gens.get(gen).ok_or_else(|| Error::Invalid(format!("no generator {}", gen)))?;
        if g.source != object || g.target != object {
            return Err(Error::Invalid(format!("{} is not an endomorphism of {}", g.name, self.objects[object])));
        }
        self.units.insert(object, gen);
        Ok(())
    }

    fn check_chain(&self, c: &Chain<usize>, source: usize, target: usize) -> Result<()> {
        for (g, s, _) in c.terms() {
            let info = self.gens.get(*g).ok_or_else(|| Error::Invalid(format!("no generator {}", g)))?;
            if info.source != source || info.target != target {
                return Err(Error::Invalid(format!("{} lies in the wrong hom", info.name)));
            }
            if s.is_negative() || !self.pog.contains(s) {
                return Err(Error::OutsideCone(fmt_rational(s)));
            }
        }
        Ok(())
    }

    /// Stores `b^d(inputs) = value` for `d >= 1`, overriding the unit rule.
    pub fn set_mu(&mut self, inputs: Vec<usize>, value: Chain<usize>) -> Result<()> {
        if inputs.is_empty() {
            return Err(Error::Invalid(String::from("use set_curvature for b^0")));
        }
        for w in inputs.windows(2) {
            if self.gens[w[0]].target != self.gens[w[1]].source {
                return Err(Error::Invalid(format!("{} and {} are not composable", self.gens[w[0]].name, self.gens[w[1]].name)));
            }
        }
        let (s, t) = (self.gens[inputs[0]].source, self.gens[*inputs.last().unwrap()].target);
        self.check_chain(&value, s, t)?;
        self.mu.insert(inputs, value);
        Ok(())
    }

    pub fn set_curvature(&mut self, object: usize, value: Chain<usize>) -> Result<()> {
        self.check_chain(&value, object, object)?;
        if value.is_zero() {
            self.curvature.remove(&object);
        } else {
            self.curvature.insert(object, value);
        }
        Ok(())
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn gens(&self) -> &[GenInfo] {
        &self.gens
    }

    pub fn units(&self) -> &BTreeMap<usize, usize> {
        &self.units
    }

    pub fn stored_mu(&self) -> &BTreeMap<Vec<usize>, Chain<usize>> {
        &self.mu
    }

    pub fn stored_curvature(&self) -> &BTreeMap<usize, Chain<usize>> {
        &self.curvature
    }

    pub fn with_mode(&self, mode: CoeffMode) -> Self {
        let mut out = self.clone();
        out.mode = mode;
        out
    }

    /// The same data read at a smaller cutoff.
    pub fn with_cutoff(&self, cutoff: Rational) -> Result<Self> {
        if cutoff > self.cutoff {
            return Err(Error::IncompatibleCutoff {
                cutoff: fmt_rational(&cutoff),
                reason: format!("data is only known below {}", fmt_rational(&self.cutoff)),
            });
        }
        if !cutoff.is_positive() {
            return Err(Error::NonPositiveCutoff(fmt_rational(&cutoff)));
        }
        let mut out = self.clone();
        out.cutoff = cutoff;
        Ok(out)
    }

    fn unit_rule(&self, inputs: &[usize]) -> Option<Chain<usize>> {
        let is_unit = |g: &usize| self.units.get(&self.gens[*g].source) == Some(g);
        if !inputs.iter().any(is_unit) {
            return None;
        }
        let zero = Rational::zero();
        if inputs.len() != 2 {
            return Some(Chain::new());
        }
        let (a, b) = (inputs[0], inputs[1]);
        Some(if is_unit(&a) {
            Chain::gen(b)
        } else {
            Chain::single(a, zero, self.mode.sign(self.gens[a].degree))
        })
    }

    /// The associated graded: only weight-preserving terms survive, and the
    /// curvature, which has positive weight, disappears.
    pub fn gr(&self) -> Self {
        let mut out = self.clone();
        out.curvature.clear();
        for (inputs, value) in out.mu.iter_mut() {
            let w: Rational = inputs.iter().map(|g| self.gens[*g].weight).sum();
            *value = value.terms().filter(|(g, s, _)| self.gens[**g].weight + *s == w).map(|(g, s, c)| (*g, *s, c)).collect();
        }
        out
    }

    /// The full subcategory on objects with vanishing stored curvature.
    pub fn flat(&self) -> Self {
        let keep: Vec<usize> = (0..self.objects.len()).filter(|x| !self.curvature.contains_key(x)).collect();
        self.restrict(&keep)
    }

    /// The full subcategory on `keep`, reindexed.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let obj_map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut gen_map = BTreeMap::new();
        let mut gens = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            if let (Some(s), Some(t)) = (obj_map.get(&g.source), obj_map.get(&g.target)) {
                gen_map.insert(i, gens.len());
                gens.push(GenInfo { source: *s, target: *t, ..g.clone() });
            }
        }
        let remap = |c: &Chain<usize>| c.map_gens(|g| gen_map[g]);
        CAinfCategory {
            pog: self.pog.clone(),
            cutoff: self.cutoff,
            epsilon: self.epsilon,
            mode: self.mode,
            objects: keep.iter().map(|x| self.objects[*x].clone()).collect(),
            gens,
            mu: self
                .mu
                .iter()
                .filter(|(k, _)| k.iter().all(|g| gen_map.contains_key(g)))
                .map(|(k, v)| (k.iter().map(|g| gen_map[g]).collect(), remap(v)))
                .collect(),
            curvature: self.curvature.iter().filter_map(|(x, c)| Some((*obj_map.get(x)?, remap(c)))).collect(),
            units: self.units.iter().filter_map(|(x, g)| Some((*obj_map.get(x)?, *gen_map.get(g)?))).collect(),
        }
    }
}

impl AinfCategory for CAinfCategory {
    type Obj = usize;
    type Gen = usize;

    fn objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    fn basis(&self, x: &usize, y: &usize) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|i| {
                let g = &self.gens[*i];
                g.source == *x && g.target == *y && g.weight < self.cutoff
            })
            .collect()
    }

    fn source(&self, g: &usize) -> usize {
        self.gens[*g].source
    }

    fn target(&self, g: &usize) -> usize {
        self.gens[*g].target
    }

    fn degree(&self, g: &usize) -> i64 {
        self.gens[*g].degree
    }

    fn weight(&self, g: &usize) -> Rational {
        self.gens[*g].weight
    }

    fn mu(&self, inputs: &[usize]) -> Chain<usize> {
        let raw = match self.mu.get(inputs) {
            Some(v) => v.clone(),
            None => self.unit_rule(inputs).unwrap_or_default(),
        };
        raw.finish(self.mode, self.cutoff, |g| self.gens[*g].weight)
    }

    fn curvature(&self, x: &usize) -> Chain<usize> {
        self.curvature.get(x).cloned().unwrap_or_default().finish(self.mode, self.cutoff, |g| self.gens[*g].weight)
    }

    fn unit(&self, x: &usize) -> Chain<usize> {
        self.units.get(x).map(|g| Chain::gen(*g)).unwrap_or_default()
    }

    fn cutoff(&self) -> Rational {
        self.cutoff
    }

    fn epsilon(&self) -> Rational {
        self.epsilon
    }

    fn mode(&self) -> CoeffMode {
        self.mode
    }

    fn gen_name(&self, g: &usize) -> String {
        self.gens[*g].name.clone()
    }

    fn obj_name(&self, x: &usize) -> String {
        self.objects[*x].clone()
    }
}
