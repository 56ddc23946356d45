#include "ctrump/dist.hpp"

#include "ctrump/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ctrump {

namespace {

void validate_probabilities(std::span<const Rational> entries, const char* what)
{
    if (entries.empty())
        throw DomainError(std::string(what) + " must have at least one entry");
    Rational sum = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (sgn(entries[i]) < 0)
            throw DomainError(std::string(what) + " entry " + std::to_string(i) + " is negative");
        sum += entries[i];
    }
    if (sum != 1)
        throw DomainError(std::string(what) + " entries sum to " + sum.get_str() + ", not 1");
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& shape)
{
    std::vector<std::size_t> strides(shape.size(), 1);
    for (std::size_t k = shape.size(); k-- > 1;)
        strides[k - 1] = strides[k] * shape[k];
    return strides;
}

} // namespace

Dist::Dist(std::vector<Rational> entries) : entries_(std::move(entries))
{
    for (auto& e : entries_)
        e.canonicalize();
    validate_probabilities(entries_, "distribution");
}

Dist Dist::uniform(std::size_t m)
{
    if (m == 0)
        throw DomainError("uniform distribution needs m >= 1");
    return Dist(std::vector<Rational>(m, Rational(1, m)));
}

Dist Dist::pure(std::size_t m, std::size_t index)
{
    if (index >= m)
        throw DomainError("pure distribution index out of range");
    std::vector<Rational> e(m, Rational(0));
    e[index] = 1;
    return Dist(std::move(e));
}

Dist sort_desc(const Dist& p)
{
    std::vector<Rational> e(p.begin(), p.end());
    std::sort(e.begin(), e.end(), std::greater<>());
    return Dist(std::move(e));
}

std::size_t rank(const Dist& p)
{
    return static_cast<std::size_t>(
        std::count_if(p.begin(), p.end(), [](const Rational& x) { return sgn(x) != 0; }));
}

bool is_full_rank(const Dist& p)
{
    return rank(p) == p.dim();
}

bool is_uniform(const Dist& p)
{
    return std::all_of(p.begin(), p.end(), [&](const Rational& x) { return x == p[0]; });
}

bool is_pure(const Dist& p)
{
    return rank(p) == 1;
}

bool same_up_to_permutation(const Dist& p, const Dist& q)
{
    return p.dim() == q.dim() && sort_desc(p) == sort_desc(q);
}

const Rational& max_entry(const Dist& p)
{
    return *std::max_element(p.begin(), p.end());
}

const Rational& min_entry(const Dist& p)
{
    return *std::min_element(p.begin(), p.end());
}

std::string to_string(const Dist& p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i)
        os << (i ? ", " : "") << p[i].get_str();
    os << ')';
    return os.str();
}

JointDist::JointDist(std::vector<Rational> tensor, std::vector<std::size_t> shape,
                     std::vector<std::string> labels)
    : tensor_(std::move(tensor)), shape_(std::move(shape)), labels_(std::move(labels))
{
    if (shape_.empty())
        throw DomainError("joint distribution needs at least one subsystem");
    if (labels_.size() != shape_.size())
        throw DomainError("joint distribution: " + std::to_string(labels_.size()) + " labels for " +
                          std::to_string(shape_.size()) + " subsystems");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty())
            throw DomainError("joint distribution: empty subsystem label");
        if (!seen.insert(l).second)
            throw DomainError("joint distribution: duplicate label '" + l + "'");
    }
    std::size_t size = 1;
    for (std::size_t d : shape_) {
        if (d == 0)
            throw DomainError("joint distribution: zero-sized subsystem");
        size *= d;
    }
    if (size != tensor_.size())
        throw DomainError("joint distribution: shape implies " + std::to_string(size) +
                          " entries, tensor has " + std::to_string(tensor_.size()));
    for (auto& e : tensor_)
        e.canonicalize();
    validate_probabilities(tensor_, "joint distribution");
}

JointDist JointDist::from_dist(const Dist& p, std::string label)
{
    return JointDist(std::vector<Rational>(p.begin(), p.end()), {p.dim()}, {std::move(label)});
}

std::size_t JointDist::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw DomainError("unknown subsystem label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

const Rational& JointDist::at(std::span<const std::size_t> index) const
{
    if (index.size() != shape_.size())
        throw DomainError("joint distribution: wrong index arity");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < shape_.size(); ++k) {
        if (index[k] >= shape_[k])
            throw DomainError("joint distribution: index out of range");
        flat = flat * shape_[k] + index[k];
    }
    return tensor_[flat];
}

JointDist kron(const Dist& p, const Dist& q, std::string first, std::string second)
{
    return kron(JointDist::from_dist(p, std::move(first)), JointDist::from_dist(q, std::move(second)));
}

JointDist kron(const JointDist& a, const JointDist& b)
{
    std::vector<Rational> t;
    t.reserve(a.size() * b.size());
    for (const auto& x : a.tensor())
        for (const auto& y : b.tensor())
            t.push_back(x * y);
    auto shape = a.shape();
    shape.insert(shape.end(), b.shape().begin(), b.shape().end());
    auto labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    return JointDist(std::move(t), std::move(shape), std::move(labels));
}

JointDist marginal(const JointDist& j, const std::vector<std::string>& keep)
{
    if (keep.empty())
        throw DomainError("marginal: no subsystems kept");
    std::vector<bool> kept(j.subsystems(), false);
    for (const auto& l : keep) {
        std::size_t k = j.index_of(l);
        if (kept[k])
            throw DomainError("marginal: label '" + l + "' repeated");
        kept[k] = true;
    }
    std::vector<std::size_t> out_shape;
    std::vector<std::string> out_labels;
    for (std::size_t k = 0; k < j.subsystems(); ++k)
        if (kept[k]) {
            out_shape.push_back(j.shape()[k]);
            out_labels.push_back(j.labels()[k]);
        }
    const auto out_strides = strides_of(out_shape);
    std::vector<Rational> out(std::accumulate(out_shape.begin(), out_shape.end(), std::size_t{1},
                                              std::multiplies<>()),
                              Rational(0));
    std::vector<std::size_t> idx(j.subsystems(), 0);
    for (const auto& v : j.tensor()) {
        std::size_t flat = 0, pos = 0;
        for (std::size_t k = 0; k < j.subsystems(); ++k)
            if (kept[k])
                flat += idx[k] * out_strides[pos++];
        out[flat] += v;
        for (std::size_t k = j.subsystems(); k-- > 0;) {
            if (++idx[k] < j.shape()[k])
                break;
            idx[k] = 0;
        }
    }
    return JointDist(std::move(out), std::move(out_shape), std::move(out_labels));
}

Dist marginal_dist(const JointDist& j, const std::string& label)
{
    return flatten(marginal(j, {label}));
}

Dist flatten(const JointDist& j)
{
    return Dist(std::vector<Rational>(j.tensor().begin(), j.tensor().end()));
}

JointDist relabel(const JointDist& j, std::vector<std::string> labels)
{
    return JointDist(std::vector<Rational>(j.tensor().begin(), j.tensor().end()), j.shape(),
                     std::move(labels));
}

JointDist permute_subsystems(const JointDist& j, const std::vector<std::size_t>& order)
{
    const std::size_t k = j.subsystems();
    if (order.size() != k)
        throw DomainError("permute_subsystems: order has wrong length");
    std::vector<bool> used(k, false);
    for (std::size_t o : order) {
        if (o >= k || used[o])
            throw DomainError("permute_subsystems: not a permutation");
        used[o] = true;
    }
    std::vector<std::size_t> shape(k);
    std::vector<std::string> labels(k);
    for (std::size_t i = 0; i < k; ++i) {
        shape[i] = j.shape()[order[i]];
        labels[i] = j.labels()[order[i]];
    }
    const auto old_strides = strides_of(j.shape());
    std::vector<Rational> out;
    out.reserve(j.size());
    std::vector<std::size_t> idx(k, 0);
    for (std::size_t n = 0; n < j.size(); ++n) {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < k; ++i)
            flat += idx[i] * old_strides[order[i]];
        out.push_back(j.tensor()[flat]);
        for (std::size_t i = k; i-- > 0;) {
            if (++idx[i] < shape[i])
                break;
            idx[i] = 0;
        }
    }
    return JointDist(std::move(out), std::move(shape), std::move(labels));
}

JointDist merge_subsystems(const JointDist& j, std::size_t first, std::size_t count,
                           std::string label)
{
    if (count == 0 || first + count > j.subsystems())
        throw DomainError("merge_subsystems: range out of bounds");
    std::vector<std::size_t> shape(j.shape().begin(), j.shape().begin() + first);
    std::vector<std::string> labels(j.labels().begin(), j.labels().begin() + first);
    std::size_t merged = 1;
    for (std::size_t k = first; k < first + count; ++k)
        merged *= j.shape()[k];
    shape.push_back(merged);
    labels.push_back(std::move(label));
    shape.insert(shape.end(), j.shape().begin() + first + count, j.shape().end());
    labels.insert(labels.end(), j.labels().begin() + first + count, j.labels().end());
    return JointDist(std::vector<Rational>(j.tensor().begin(), j.tensor().end()), std::move(shape),
                     std::move(labels));
}

} // namespace ctrump
