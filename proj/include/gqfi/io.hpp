#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gqfi/cavity.hpp"

namespace gqfi {

// {"n_modes", "d_re", "d_im", "sigma_re", "sigma_im"}
std::string state_to_json(const GaussianState& s, int indent = 2);
GaussianState state_from_json(const std::string& text);
GaussianState load_state(const std::string& path);
void save_state(const std::string& path, const GaussianState& s);

// Either {"N", "alpha_re", "alpha_im", "beta_re", "beta_im"} with an optional
// "taylor" list of per-order objects of the same shape (order 0 first), or
// {"builtin": "cavity", "tau", "a", "N"}.
struct ChannelSpec {
    BogoliubovTransform transform;
    std::optional<TaylorChannel> taylor;  // set when the channel depends on eps
    std::string description;
};
ChannelSpec channel_from_json(const std::string& text);
ChannelSpec load_channel(const std::string& path);
std::string channel_to_json(const BogoliubovTransform& t, int indent = 2);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// tau,r,nu1,nu2,H,regime,N_trunc with 12 significant digits
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

}  // namespace gqfi
