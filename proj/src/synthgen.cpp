#include "tswarp/synthgen.hpp"

#include <string>

namespace tswarp {

void SyntheticSpec::validate() const {
  if (num_classes < 1 || atoms_per_class < 1 || samples_per_atom < 1) {
    throw std::invalid_argument("SyntheticSpec: counts must be at least 1");
  }
  if (grid_size < 16) throw std::invalid_argument("SyntheticSpec: grid_size must be at least 16");
  if (warp_knots < 2) throw std::invalid_argument("SyntheticSpec: warp_knots must be at least 2");
  if (!(warp_roughness >= 0.0 && warp_roughness <= 1.0)) {
    throw std::invalid_argument("SyntheticSpec: warp_roughness must lie in [0, 1]");
  }
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

LabeledDataset generate_dataset(const SyntheticSpec& spec) {
  spec.validate();
  const auto templates = template_catalog<double>(
      static_cast<std::size_t>(spec.num_classes) * static_cast<std::size_t>(spec.atoms_per_class), spec.grid_size);
  const WarpParams warp{spec.warp_knots, spec.warp_roughness, spec.allow_flat};

  std::vector<LabeledItem> items;
  items.reserve(templates.size() * static_cast<std::size_t>(spec.samples_per_atom));
  for (int c = 0; c < spec.num_classes; ++c) {
    for (int m = 0; m < spec.atoms_per_class; ++m) {
      const std::uint64_t stream = static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(spec.atoms_per_class) +
                                   static_cast<std::uint64_t>(m);
      auto rng = make_stream(spec.seed, stream);
      const Series& tmpl = templates[stream];
      for (int k = 0; k < spec.samples_per_atom; ++k) {
        items.push_back({apply_warp(tmpl, random_warp<double>(warp, rng)), c, m});
      }
    }
  }

  std::vector<std::string> names;
  for (int c = 0; c < spec.num_classes; ++c) names.push_back(std::to_string(c));
  Provenance meta{"synthetic",
                  std::to_string(spec.num_classes) + " classes x " + std::to_string(spec.atoms_per_class) +
                      " atoms x " + std::to_string(spec.samples_per_atom) + " samples, length " +
                      std::to_string(spec.grid_size) + ", roughness " + std::to_string(spec.warp_roughness),
                  spec.seed};
  return LabeledDataset(std::move(items), std::move(names), std::move(meta));
}

}  // namespace tswarp
