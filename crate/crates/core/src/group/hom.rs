use std::collections::VecDeque;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A homomorphism between finite groups, stored as its full image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    images: Vec<usize>,
}

impl GroupHom {
    /// Validates a full image table.
    pub fn from_images(dom: &FiniteGroup, cod: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != dom.order() {
            return Err(Error::InvalidLifting(format!(
                "map has {} images but the domain has order {}",
                images.len(),
                dom.order()
            )));
        }
        for &y in &images {
            cod.check_element(y)?;
        }
        for a in dom.elements() {
            for b in dom.elements() {
                if images[dom.mul(a, b)] != cod.mul(images[a], images[b]) {
                    return Err(Error::InvalidLifting(format!(
                        "map is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self { images })
    }

    /// Extends generator images along words in the generators and validates.
    pub fn from_generator_images(
        dom: &FiniteGroup,
        cod: &FiniteGroup,
        gens: &[usize],
        imgs: &[usize],
    ) -> Result<Self> {
        match Self::extend(dom, cod, gens, imgs)? {
            Some(images) => Self::from_images(dom, cod, images),
            None => Err(Error::InvalidLifting(
                "generator images do not extend to a homomorphism".into(),
            )),
        }
    }

    /// Breadth-first extension of generator images; `None` when two words for
    /// the same element disagree. Errors if the generators do not span.
    pub(crate) fn extend(
        dom: &FiniteGroup,
        cod: &FiniteGroup,
        gens: &[usize],
        imgs: &[usize],
    ) -> Result<Option<Vec<usize>>> {
        if gens.len() != imgs.len() {
            return Err(Error::InvalidLifting("generator/image count mismatch".into()));
        }
        for &g in gens {
            dom.check_element(g)?;
        }
        for &h in imgs {
            cod.check_element(h)?;
        }
        let mut images = vec![usize::MAX; dom.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(imgs) {
                let y = dom.mul(x, g);
                let img = cod.mul(images[x], h);
                if images[y] == usize::MAX {
                    images[y] = img;
                    queue.push_back(y);
                } else if images[y] != img {
                    return Ok(None);
                }
            }
        }
        if images.contains(&usize::MAX) {
            return Err(Error::InvalidLifting("generators do not span the domain".into()));
        }
        Ok(Some(images))
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Self { images: group.elements().collect() }
    }

    pub fn trivial(dom: &FiniteGroup) -> Self {
        Self { images: vec![0; dom.order()] }
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_surjective(&self, cod: &FiniteGroup) -> bool {
        let mut hit = vec![false; cod.order()];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Sorted kernel elements.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&g| self.images[g] == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_onto_c2() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let f = GroupHom::from_generator_images(&c4, &c2, &[1], &[1]).unwrap();
        assert_eq!(f.images(), &[0, 1, 0, 1]);
        assert!(f.is_surjective(&c2));
        assert_eq!(f.kernel(), vec![0, 2]);
        // C2 -> C4 sending the generator to an element of order 4 is not a hom
        assert!(GroupHom::from_generator_images(&c2, &c4, &[1], &[1]).is_err());
    }
}
