//! Relocating designs along an address map.

use std::collections::BTreeMap;

use crate::designs::{Address, Design, Negative, Positive, Ram};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DelocationError {
    #[error("{child} is sent to {image}, which is not a child of {parent_image}")]
    NotChild { child: Address, image: Address, parent_image: Address },
    #[error("{0} and {1} have the same image")]
    NotInjective(Address, Address),
}

/// An address map `θ`. It induces a map on designs when, for every action
/// `(ξ, I)`, the images of the `ξi` are distinct children of `θ(ξ)`.
pub struct Delocation {
    map: Box<dyn Fn(&Address) -> Address + Send + Sync>,
}

impl Delocation {
    pub fn new(f: impl Fn(&Address) -> Address + Send + Sync + 'static) -> Delocation {
        Delocation { map: Box::new(f) }
    }

    pub fn identity() -> Delocation {
        Delocation::new(|a| a.clone())
    }

    /// Below `xi`, the first bias `i` becomes `k * i + offset`.
    pub fn tagging(xi: Address, k: u32, offset: u32) -> Delocation {
        Delocation::new(move |a| {
            if a.len() <= xi.len() || !xi.is_prefix_of(a) {
                return a.clone();
            }
            let mut v = a.0.clone();
            let n = xi.len();
            v[n] = k * v[n] + offset;
            Address(v)
        })
    }

    pub fn apply(&self, a: &Address) -> Address {
        (self.map)(a)
    }

    /// The image of ramification `ram` at `xi`.
    pub fn ram(&self, xi: &Address, ram: &Ram) -> Result<Ram, DelocationError> {
        let fx = self.apply(xi);
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        for &i in ram {
            let child = xi.child(i);
            let image = self.apply(&child);
            match image.parent() {
                Some((p, j)) if p == fx => {
                    if let Some(other) = seen.insert(j, i) {
                        return Err(DelocationError::NotInjective(xi.child(other), child));
                    }
                }
                _ => return Err(DelocationError::NotChild { child, image, parent_image: fx }),
            }
        }
        Ok(seen.into_keys().collect())
    }

    pub fn positive(&self, p: &Positive) -> Result<Positive, DelocationError> {
        match p {
            Positive::Proper { focus, ram, children } => {
                let new_ram = self.ram(focus, ram)?;
                let kids = children.values().map(|c| self.negative(c)).collect::<Result<Vec<_>, _>>()?;
                Ok(Positive::proper(self.apply(focus), new_ram, kids).expect("images are the children of the image"))
            }
            other => Ok(other.clone()),
        }
    }

    pub fn negative(&self, n: &Negative) -> Result<Negative, DelocationError> {
        let mut out = Negative::skunk(self.apply(&n.focus));
        for (j, p) in &n.branches {
            out.set_branch(self.ram(&n.focus, j)?, self.positive(p)?);
        }
        Ok(out)
    }

    pub fn design(&self, d: &Design) -> Result<Design, DelocationError> {
        Ok(match d {
            Design::Positive(p) => Design::Positive(self.positive(p)?),
            Design::Negative(n) => Design::Negative(self.negative(n)?),
        })
    }

    /// Checks that `θ` is injective on the addresses of `designs` and maps
    /// them to valid designs.
    pub fn validate(&self, designs: &[Design]) -> Result<(), DelocationError> {
        let mut images: BTreeMap<Address, Address> = BTreeMap::new();
        for d in designs {
            self.design(d)?;
            let actions = match d {
                Design::Positive(p) => p.actions(),
                Design::Negative(n) => n.actions(),
            };
            for a in actions.keys() {
                let addrs = std::iter::once(a.focus.clone()).chain(a.focus.children(&a.ram));
                for x in addrs {
                    let y = self.apply(&x);
                    match images.get(&y) {
                        Some(prev) if *prev != x => return Err(DelocationError::NotInjective(prev.clone(), x)),
                        _ => {
                            images.insert(y, x);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
