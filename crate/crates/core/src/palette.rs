use crate::layout::Slot;
use crate::scene::Color;

/// Slot colors shared by the map, legend and glyph columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Palette {
    pub slots: Vec<Color>,
    pub median: Color,
    pub no_data: Color,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            slots: ["#D55E00", "#0072B2", "#009E73", "#CC79A7", "#E69F00"]
                .into_iter()
                .map(Color::from)
                .collect(),
            median: Color::from("#000000"),
            no_data: Color::from("#8C8C8C"),
        }
    }
}

impl Palette {
    pub fn color(&self, slot: Slot) -> &Color {
        match slot {
            Slot::Color(k) => &self.slots[k as usize % self.slots.len()],
            Slot::Median => &self.median,
            Slot::NoData => &self.no_data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = Palette::default();
        assert_eq!(p.slots.len(), 5);
        assert_eq!(p.color(Slot::Color(0)).as_str(), "#D55E00");
        assert_eq!(p.color(Slot::Color(4)).as_str(), "#E69F00");
        assert_eq!(p.color(Slot::Median).as_str(), "#000000");
    }
}
