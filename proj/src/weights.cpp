#include "mwrank/weights.hpp"

#include <numeric>

#include "mwrank/errors.hpp"

namespace mw {

WeightSystem::WeightSystem(std::vector<int> weights, std::vector<std::string> names) {
    if (weights.size() < 2) throw Error(ErrorKind::Context, "weight system needs at least two variables");
    if (names.size() != weights.size()) throw Error(ErrorKind::Context, "weights and names differ in length");
    for (int w : weights)
        if (w < 1) throw Error(ErrorKind::Context, "weights must be >= 1");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (names[i] == names[j]) throw Error(ErrorKind::Context, "duplicate variable name " + names[i]);
    d_ = std::make_shared<const Data>(Data{std::move(weights), std::move(names)});
}

WeightSystem WeightSystem::unit(std::vector<std::string> names) {
    std::vector<int> w(names.size(), 1);
    return WeightSystem(std::move(w), std::move(names));
}

long WeightSystem::total() const {
    return std::accumulate(d_->weights.begin(), d_->weights.end(), 0L);
}

std::optional<std::size_t> WeightSystem::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < d_->names.size(); ++i)
        if (d_->names[i] == name) return i;
    return std::nullopt;
}

bool WeightSystem::operator==(const WeightSystem& o) const {
    return d_ == o.d_ || (d_->weights == o.d_->weights && d_->names == o.d_->names);
}

std::string WeightSystem::describe() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ",";
        s += d_->names[i] + ":" + std::to_string(d_->weights[i]);
    }
    return s + ")";
}

}  // namespace mw
