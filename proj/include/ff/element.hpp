#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ff {

enum class ElementKind { permutation, matrix };

/// Bijection of {0, ..., degree-1}. Products act on the right: (a*b)(i) = b(a(i)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint16_t> images);

    static Permutation identity(std::size_t degree);
    /// Builds from 1-based images, the convention of every external document.
    static Permutation from_one_based(const std::vector<long long>& images);
    /// Builds from disjoint cycles given with 1-based points.
    static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles);

    std::size_t degree() const noexcept { return images_.size(); }
    std::uint16_t operator()(std::size_t point) const { return images_[point]; }
    const std::vector<std::uint16_t>& images() const noexcept { return images_; }
    std::vector<long long> one_based() const;

    Permutation operator*(const Permutation& rhs) const;
    Permutation inverse() const;
    bool is_identity() const noexcept;

    /// Disjoint cycle notation with 1-based points, "()" for the identity.
    std::string cycle_string() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint16_t> images_;
};

/// Square matrix over the prime field F_p, acting on row vectors from the right.
class Matrix {
public:
    Matrix() = default;
    Matrix(unsigned field, unsigned dimension, std::vector<std::uint8_t> entries);

    static Matrix identity(unsigned field, unsigned dimension);

    unsigned field() const noexcept { return field_; }
    unsigned dimension() const noexcept { return dimension_; }
    unsigned at(unsigned row, unsigned col) const { return entries_[row * dimension_ + col]; }
    const std::vector<std::uint8_t>& entries() const noexcept { return entries_; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix inverse() const;
    unsigned determinant() const;
    bool is_identity() const noexcept;

    std::string to_string() const;

    bool operator==(const Matrix&) const = default;

private:
    std::uint8_t field_ = 2;
    std::uint8_t dimension_ = 0;
    std::vector<std::uint8_t> entries_;
};

/// Shape shared by all elements of one group: kind plus degree (points or dimension) and field.
struct ElementShape {
    ElementKind kind = ElementKind::permutation;
    unsigned degree = 0;
    unsigned field = 0;

    bool operator==(const ElementShape&) const = default;
};

class GroupElement {
public:
    GroupElement() = default;
    GroupElement(Permutation p) : value_(std::move(p)) {}
    GroupElement(Matrix m) : value_(std::move(m)) {}

    static GroupElement identity(const ElementShape& shape);

    ElementKind kind() const noexcept;
    ElementShape shape() const;
    const Permutation& permutation() const { return std::get<Permutation>(value_); }
    const Matrix& matrix() const { return std::get<Matrix>(value_); }

    GroupElement operator*(const GroupElement& rhs) const;
    GroupElement inverse() const;
    bool is_identity() const noexcept;

    /// Canonical byte encoding; two elements of the same shape are equal iff encodings are.
    std::string encode() const;
    std::string to_string() const;

    bool operator==(const GroupElement&) const = default;

private:
    std::variant<Permutation, Matrix> value_;
};

} // namespace ff
