#include "hypercrit/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "hypercrit/errors.hpp"

namespace hypercrit {

PermutationAction PermutationAction::make(int rank, std::vector<std::vector<int>> perms) {
    if (rank < 2) throw InvalidInputError("tree model requires rank >= 2");
    if (static_cast<int>(perms.size()) != rank)
        throw InvalidInputError("expected one permutation per generator");
    PermutationAction a;
    a.rank_ = rank;
    a.size_ = perms.empty() ? 0 : static_cast<int>(perms[0].size());
    if (a.size_ <= 0) throw InvalidInputError("action on an empty set");
    a.inv_.assign(perms.size(), std::vector<int>(static_cast<std::size_t>(a.size_), -1));
    for (std::size_t g = 0; g < perms.size(); ++g) {
        if (static_cast<int>(perms[g].size()) != a.size_)
            throw InvalidInputError("permutations act on sets of different sizes");
        for (int p = 0; p < a.size_; ++p) {
            int q = perms[g][static_cast<std::size_t>(p)];
            if (q < 0 || q >= a.size_ || a.inv_[g][static_cast<std::size_t>(q)] != -1)
                throw InvalidInputError("generator image is not a permutation");
            a.inv_[g][static_cast<std::size_t>(q)] = p;
        }
    }
    a.perms_ = std::move(perms);
    return a;
}

int PermutationAction::act_word(int p, const Word& w) const {
    for (int i = 0; i < w.length(); ++i) p = act(p, w.letter(i));
    return p;
}

std::vector<int> PermutationAction::orbit_of(int p) const {
    std::vector<bool> seen(static_cast<std::size_t>(size_), false);
    std::vector<int> orbit;
    std::deque<int> q{p};
    seen[static_cast<std::size_t>(p)] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        orbit.push_back(v);
        for (Letter l = 0; l < alphabet_size(rank_); ++l) {
            int w = act(v, l);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                q.push_back(w);
            }
        }
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

bool PermutationAction::is_transitive() const {
    return static_cast<int>(orbit_of(0).size()) == size_;
}

namespace {

StallingsGraph schreier_graph(const PermutationAction& a, int basepoint) {
    std::vector<std::vector<int>> next(
        static_cast<std::size_t>(a.size()),
        std::vector<int>(static_cast<std::size_t>(alphabet_size(a.rank())), -1));
    for (int p = 0; p < a.size(); ++p)
        for (Letter l = 0; l < alphabet_size(a.rank()); ++l)
            next[static_cast<std::size_t>(p)][static_cast<std::size_t>(l)] = a.act(p, l);
    return StallingsGraph::from_transitions(a.rank(), std::move(next), basepoint);
}

std::vector<int> compose_then(const std::vector<int>& p, const std::vector<int>& q) {
    // apply p, then q
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i] = q[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
    return r;
}

}  // namespace

SubgroupHandle SubgroupHandle::full_group(int rank) {
    SubgroupHandle h;
    h.kind_ = Kind::Stallings;
    h.rank_ = rank;
    h.graph_ = std::make_shared<StallingsGraph>(StallingsGraph::full_group(rank));
    h.key_ = h.graph_->canonical_key();
    return h;
}

SubgroupHandle SubgroupHandle::stallings(int rank, const std::vector<Word>& generators) {
    SubgroupHandle h;
    h.kind_ = Kind::Stallings;
    h.rank_ = rank;
    h.graph_ = std::make_shared<StallingsGraph>(StallingsGraph::fold(rank, generators));
    h.key_ = h.graph_->canonical_key();
    return h;
}

SubgroupHandle SubgroupHandle::coset_stabilizer(PermutationAction action, int point) {
    if (point < 0 || point >= action.size())
        throw InvalidInputError("stabilized point outside the action's set");
    // Restrict to the point's orbit so the table is transitive.
    std::vector<int> orbit = action.orbit_of(point);
    if (static_cast<int>(orbit.size()) != action.size()) {
        std::vector<int> index(static_cast<std::size_t>(action.size()), -1);
        for (std::size_t i = 0; i < orbit.size(); ++i)
            index[static_cast<std::size_t>(orbit[i])] = static_cast<int>(i);
        std::vector<std::vector<int>> perms(static_cast<std::size_t>(action.rank()));
        for (int g = 0; g < action.rank(); ++g) {
            perms[static_cast<std::size_t>(g)].resize(orbit.size());
            for (std::size_t i = 0; i < orbit.size(); ++i)
                perms[static_cast<std::size_t>(g)][i] =
                    index[static_cast<std::size_t>(action.perms()[static_cast<std::size_t>(g)]
                                                       [static_cast<std::size_t>(orbit[i])])];
        }
        point = index[static_cast<std::size_t>(point)];
        action = PermutationAction::make(action.rank(), std::move(perms));
    }
    SubgroupHandle h;
    h.kind_ = Kind::CosetStabilizer;
    h.rank_ = action.rank();
    h.point_ = point;
    h.graph_ = std::make_shared<StallingsGraph>(schreier_graph(action, point));
    h.action_ = std::make_shared<PermutationAction>(std::move(action));
    h.key_ = h.graph_->canonical_key();
    return h;
}

SubgroupHandle SubgroupHandle::kernel_finite(int rank, std::vector<std::vector<int>> images) {
    if (static_cast<int>(images.size()) != rank)
        throw InvalidInputError("expected one permutation image per generator");
    // Enumerate the image group and build its Cayley action; the kernel is
    // the stabilizer of the identity under right multiplication.
    PermutationAction img = PermutationAction::make(rank, images);  // validates
    std::size_t degree = images[0].size();
    std::vector<std::vector<int>> steps = images;
    for (int g = 0; g < rank; ++g) {
        std::vector<int> inv(degree);
        for (std::size_t j = 0; j < degree; ++j)
            inv[static_cast<std::size_t>(images[static_cast<std::size_t>(g)][j])] =
                static_cast<int>(j);
        steps.push_back(std::move(inv));
    }
    std::vector<int> identity(degree);
    for (std::size_t i = 0; i < degree; ++i) identity[i] = static_cast<int>(i);
    std::map<std::vector<int>, int> id_of;
    std::vector<std::vector<int>> elements{identity};
    id_of[identity] = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const auto& gen : steps) {
            std::vector<int> prod = compose_then(elements[i], gen);
            if (!id_of.contains(prod)) {
                id_of[prod] = static_cast<int>(elements.size());
                elements.push_back(prod);
            }
        }
    }
    int n = static_cast<int>(elements.size());
    std::vector<std::vector<int>> cayley(static_cast<std::size_t>(rank),
                                         std::vector<int>(static_cast<std::size_t>(n)));
    for (int e = 0; e < n; ++e)
        for (int g = 0; g < rank; ++g)
            cayley[static_cast<std::size_t>(g)][static_cast<std::size_t>(e)] =
                id_of.at(compose_then(elements[static_cast<std::size_t>(e)],
                                      images[static_cast<std::size_t>(g)]));
    PermutationAction a = PermutationAction::make(rank, std::move(cayley));
    SubgroupHandle h;
    h.kind_ = Kind::KernelFinite;
    h.rank_ = rank;
    h.point_ = 0;
    h.graph_ = std::make_shared<StallingsGraph>(schreier_graph(a, 0));
    h.action_ = std::make_shared<PermutationAction>(std::move(a));
    h.finite_images_ = std::move(images);
    h.key_ = h.graph_->canonical_key();
    return h;
}

SubgroupHandle SubgroupHandle::kernel_abelian(int rank,
                                              std::vector<std::vector<long long>> images) {
    if (static_cast<int>(images.size()) != rank)
        throw InvalidInputError("expected one integer vector per generator");
    std::size_t m = images[0].size();
    for (const auto& v : images)
        if (v.size() != m) throw InvalidInputError("image vectors of unequal dimension");
    SubgroupHandle h;
    h.kind_ = Kind::KernelAbelian;
    h.rank_ = rank;
    h.abelian_images_ = std::move(images);
    h.key_ = "ka|" + std::to_string(rank) + "|" + std::to_string(m) + "|";
    for (const auto& v : h.abelian_images_)
        for (long long e : v) h.key_ += std::to_string(e) + ",";
    return h;
}

bool SubgroupHandle::contains(const Word& w) const {
    switch (kind_) {
        case Kind::Stallings:
            return graph_->accepts(w);
        case Kind::CosetStabilizer:
            return action_->act_word(point_, w) == point_;
        case Kind::KernelFinite:
            return action_->act_word(point_, w) == point_;
        case Kind::KernelAbelian: {
            std::vector<long long> acc(abelian_images_[0].size(), 0);
            for (int i = 0; i < w.length(); ++i) {
                Letter l = w.letter(i);
                const auto& v = abelian_images_[static_cast<std::size_t>(letter_gen(l))];
                long long sgn = letter_is_inverse(l) ? -1 : 1;
                for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += sgn * v[j];
            }
            return std::all_of(acc.begin(), acc.end(), [](long long e) { return e == 0; });
        }
    }
    return false;
}

SubgroupHandle SubgroupHandle::conjugated(const Word& g) const {
    switch (kind_) {
        case Kind::Stallings: {
            std::vector<Word> gens = generators();
            for (Word& w : gens) w = g * w * g.inverse();
            if (gens.empty()) return *this;  // trivial subgroup
            return stallings(rank_, gens);
        }
        case Kind::CosetStabilizer:
            return coset_stabilizer(*action_, action_->act_word(point_, g.inverse()));
        case Kind::KernelFinite:
        case Kind::KernelAbelian:
            return *this;  // kernels are normal
    }
    throw InvariantViolationError("unknown subgroup kind");
}

const StallingsGraph& SubgroupHandle::graph() const {
    if (!has_graph())
        throw UnsupportedOperationError("kernel-to-Z^m subgroups have no finite core graph");
    return *graph_;
}

bool SubgroupHandle::has_finite_index() const {
    return has_graph() && graph_->is_complete();
}

long long SubgroupHandle::finite_index() const {
    if (!has_finite_index()) throw InvalidInputError("subgroup does not have finite index");
    return graph_->size();
}

bool SubgroupHandle::is_normal_on_generators() const {
    if (kind_ == Kind::KernelFinite || kind_ == Kind::KernelAbelian) return true;
    for (Letter l = 0; l < alphabet_size(rank_); ++l) {
        SubgroupHandle c = conjugated(Word::from_reduced({l}));
        if (c.canonical_key() != key_) return false;
    }
    return true;
}

const PermutationAction& SubgroupHandle::action() const {
    if (!action_) throw UnsupportedOperationError("subgroup carrier has no permutation action");
    return *action_;
}

int SubgroupHandle::stabilized_point() const { return point_; }

const std::vector<std::vector<int>>& SubgroupHandle::finite_images() const {
    if (kind_ != Kind::KernelFinite)
        throw UnsupportedOperationError("not a kernel-to-finite-group subgroup");
    return finite_images_;
}

const std::vector<std::vector<long long>>& SubgroupHandle::abelian_images() const {
    if (kind_ != Kind::KernelAbelian)
        throw UnsupportedOperationError("not a kernel-to-Z^m subgroup");
    return abelian_images_;
}

std::vector<Word> SubgroupHandle::generators() const { return graph().basis(); }

}  // namespace hypercrit
