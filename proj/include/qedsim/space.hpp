// space.hpp — Tensor-product Hilbert space descriptor: bosonic modes with
// hard Fock cutoffs plus a 2- or 3-level atomic subsystem.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qedsim {

using Index = long;

struct Mode {
    std::string label;
    int cutoff = 0; // Fock states 0..cutoff-1 retained

    friend bool operator==(const Mode&, const Mode&) = default;
};

// Basis ordering convention: the atomic index varies slowest, then modes in
// listed order with mode 0 fastest. All index arithmetic must go through the
// maps below; no module hand-rolls strides.
class SpaceDescriptor {
public:
    SpaceDescriptor(std::vector<Mode> modes, int atom_levels)
        : modes_(std::move(modes)), atom_levels_(atom_levels) {
        if (atom_levels_ != 2 && atom_levels_ != 3)
            throw std::invalid_argument("SpaceDescriptor: atom_levels must be 2 or 3");
        Index field_dim = 1;
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (modes_[k].cutoff < 2)
                throw std::invalid_argument("SpaceDescriptor: mode '" + modes_[k].label +
                                            "' needs cutoff >= 2");
            for (std::size_t j = 0; j < k; ++j)
                if (modes_[j].label == modes_[k].label)
                    throw std::invalid_argument("SpaceDescriptor: duplicate mode label '" +
                                                modes_[k].label + "'");
            strides_.push_back(field_dim);
            field_dim *= modes_[k].cutoff;
        }
        atom_stride_ = field_dim;
        dim_ = atom_stride_ * atom_levels_;
        if (dim_ < 4)
            throw std::invalid_argument("SpaceDescriptor: total dimension must be >= 4");
    }

    Index dim() const { return dim_; }
    int atom_levels() const { return atom_levels_; }
    std::size_t n_modes() const { return modes_.size(); }
    const std::vector<Mode>& modes() const { return modes_; }
    const Mode& mode(std::size_t k) const { return modes_.at(k); }

    std::size_t mode_index(const std::string& label) const {
        for (std::size_t k = 0; k < modes_.size(); ++k)
            if (modes_[k].label == label) return k;
        throw std::invalid_argument("SpaceDescriptor: unknown mode label '" + label + "'");
    }

    Index mode_stride(std::size_t k) const { return strides_.at(k); }
    Index atom_stride() const { return atom_stride_; }

    // Flat index of |atom> ⊗ |n_0, n_1, ...>; atom is 0-based here.
    Index flat_index(int atom, std::span<const int> occupations) const {
        if (atom < 0 || atom >= atom_levels_)
            throw std::out_of_range("SpaceDescriptor::flat_index: atom level out of range");
        if (occupations.size() != modes_.size())
            throw std::invalid_argument("SpaceDescriptor::flat_index: need one occupation per mode");
        Index idx = atom * atom_stride_;
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (occupations[k] < 0 || occupations[k] >= modes_[k].cutoff)
                throw std::out_of_range("SpaceDescriptor::flat_index: occupation out of range for mode '" +
                                        modes_[k].label + "'");
            idx += occupations[k] * strides_[k];
        }
        return idx;
    }

    int atom_of(Index flat) const { return static_cast<int>(flat / atom_stride_); }

    int occupation_of(Index flat, std::size_t k) const {
        return static_cast<int>((flat / strides_.at(k)) % modes_[k].cutoff);
    }

    // Flat index with the occupation of mode k replaced by n.
    Index with_occupation(Index flat, std::size_t k, int n) const {
        const int old = occupation_of(flat, k);
        return flat + (static_cast<Index>(n) - old) * strides_[k];
    }

    // Flat index with the atomic level replaced (0-based).
    Index with_atom(Index flat, int atom) const {
        return flat + (static_cast<Index>(atom) - atom_of(flat)) * atom_stride_;
    }

    friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) {
        return a.atom_levels_ == b.atom_levels_ && a.modes_ == b.modes_;
    }

private:
    std::vector<Mode> modes_;
    int atom_levels_;
    std::vector<Index> strides_;
    Index atom_stride_ = 1;
    Index dim_ = 0;
};

// Conventional spaces for the models in this package: mode labels "x" ("y").
inline SpaceDescriptor make_space(std::vector<int> cutoffs, int atom_levels) {
    static const char* names[] = {"x", "y", "z"};
    if (cutoffs.empty() || cutoffs.size() > 3)
        throw std::invalid_argument("make_space: need 1..3 mode cutoffs");
    std::vector<Mode> modes;
    for (std::size_t k = 0; k < cutoffs.size(); ++k)
        modes.push_back({names[k], cutoffs[k]});
    return SpaceDescriptor(std::move(modes), atom_levels);
}

} // namespace qedsim
