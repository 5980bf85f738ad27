#include "avgrare/family.hpp"

#include <algorithm>

namespace avgrare {

namespace {

void check_members(int n, std::span<const Mask> members) {
  const Mask outside = ~full_mask(n);
  for (Mask m : members)
    if (m & outside)
      throw InputError("member has an element outside ground size " + std::to_string(n));
}

}  // namespace

SetFamily::SetFamily(int n, std::vector<Mask> members) : n_(n), members_(std::move(members)) {
  check_ground_size(n);
  check_members(n, members_);
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InputError("duplicate member in set family");
}

SetFamily SetFamily::deduplicated(int n, std::vector<Mask> members) {
  check_ground_size(n);
  check_members(n, members);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return SetFamily(n, std::move(members), Trusted{});
}

SetFamily SetFamily::power_set(int n) {
  check_ground_size(n);
  check_enumerable(n);
  std::vector<Mask> all(std::size_t{1} << n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return SetFamily(n, std::move(all), Trusted{});
}

bool SetFamily::contains(Mask m) const {
  return std::binary_search(members_.begin(), members_.end(), m);
}

std::int64_t SetFamily::total_size() const {
  std::int64_t sum = 0;
  for (Mask m : members_) sum += popcount(m);
  return sum;
}

std::int64_t degree(const SetFamily& family, ElementId u) {
  check_element(u, family.ground_size());
  return std::count_if(family.begin(), family.end(), [u](Mask m) { return has(m, u); });
}

std::vector<std::int64_t> degrees(const SetFamily& family) {
  std::vector<std::int64_t> out(family.ground_size(), 0);
  for (Mask m : family)
    for (ElementId v : elements_of(m)) ++out[v];
  return out;
}

std::int64_t nds(const SetFamily& family) {
  return nds_from(family.total_size(), static_cast<std::int64_t>(family.size()),
                  family.ground_size());
}

bool is_rare(const SetFamily& family, ElementId u) {
  return 2 * degree(family, u) <= static_cast<std::int64_t>(family.size());
}

Mask rare_elements(const SetFamily& family) {
  const auto deg = degrees(family);
  Mask out = 0;
  for (ElementId v = 0; v < family.ground_size(); ++v)
    if (2 * deg[v] <= static_cast<std::int64_t>(family.size())) out |= bit(v);
  return out;
}

bool is_average_rare(const SetFamily& family) { return nds(family) <= 0; }

SetFamily trace_at(const SetFamily& family, ElementId x) {
  check_element(x, family.ground_size());
  std::vector<Mask> image;
  image.reserve(family.size());
  for (Mask m : family) image.push_back(drop_bit(m, x));
  return SetFamily::deduplicated(family.ground_size() - 1, std::move(image));
}

bool parallel(const SetFamily& family, ElementId u, ElementId v) {
  check_element(u, family.ground_size());
  check_element(v, family.ground_size());
  if (u == v) throw InputError("parallel() needs two distinct elements");
  return std::all_of(family.begin(), family.end(),
                     [u, v](Mask m) { return has(m, u) == has(m, v); });
}

bool is_intersection_closed(const SetFamily& family) {
  const auto members = family.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!family.contains(members[i] & members[j])) return false;
  return true;
}

}  // namespace avgrare
