#include "ff/element.hpp"

#include "ff/error.hpp"

#include <sstream>

namespace ff {

namespace {

unsigned inverse_mod(unsigned a, unsigned p) {
    // p is prime and small; Fermat's little theorem.
    unsigned result = 1;
    unsigned base = a % p;
    unsigned e = p - 2;
    while (e) {
        if (e & 1U)
            result = result * base % p;
        base = base * base % p;
        e >>= 1U;
    }
    return result;
}

} // namespace

Permutation::Permutation(std::vector<std::uint16_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
        if (v >= images_.size() || seen[v])
            throw InputError("permutation images are not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t degree) {
    if (degree > 65535)
        throw InputError("permutation degree exceeds 65535");
    std::vector<std::uint16_t> images(degree);
    for (std::size_t i = 0; i < degree; ++i)
        images[i] = static_cast<std::uint16_t>(i);
    Permutation p;
    p.images_ = std::move(images);
    return p;
}

Permutation Permutation::from_one_based(const std::vector<long long>& images) {
    if (images.size() > 65535)
        throw InputError("permutation degree exceeds 65535");
    std::vector<std::uint16_t> out;
    out.reserve(images.size());
    for (auto v : images) {
        if (v < 1 || v > static_cast<long long>(images.size()))
            throw InputError("permutation image " + std::to_string(v) + " outside 1.." +
                             std::to_string(images.size()));
        out.push_back(static_cast<std::uint16_t>(v - 1));
    }
    return Permutation(std::move(out));
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles) {
    auto p = identity(degree);
    for (const auto& cycle : cycles) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            int from = cycle[i];
            int to = cycle[(i + 1) % cycle.size()];
            if (from < 1 || to < 1 || static_cast<std::size_t>(from) > degree ||
                static_cast<std::size_t>(to) > degree)
                throw InputError("cycle point outside 1..degree");
            p.images_[from - 1] = static_cast<std::uint16_t>(to - 1);
        }
    }
    return Permutation(std::move(p.images_));
}

std::vector<long long> Permutation::one_based() const {
    std::vector<long long> out(images_.begin(), images_.end());
    for (auto& v : out)
        ++v;
    return out;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        out.images_[i] = rhs.images_[images_[i]];
    return out;
}

Permutation Permutation::inverse() const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        out.images_[images_[i]] = static_cast<std::uint16_t>(i);
    return out;
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i)
            return false;
    return true;
}

std::string Permutation::cycle_string() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
        if (seen[start] || images_[start] == start)
            continue;
        out += '(';
        std::size_t i = start;
        bool first = true;
        while (!seen[i]) {
            seen[i] = true;
            if (!first)
                out += ',';
            out += std::to_string(i + 1);
            first = false;
            i = images_[i];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Matrix::Matrix(unsigned field, unsigned dimension, std::vector<std::uint8_t> entries)
    : field_(static_cast<std::uint8_t>(field)),
      dimension_(static_cast<std::uint8_t>(dimension)),
      entries_(std::move(entries)) {
    if (field < 2 || field > 251)
        throw InputError("matrix field must be a prime below 256");
    for (unsigned d = 2; d * d <= field; ++d)
        if (field % d == 0)
            throw InputError("matrix field " + std::to_string(field) + " is not prime");
    if (dimension == 0 || dimension > 16)
        throw InputError("matrix dimension must lie in 1..16");
    if (entries_.size() != dimension * dimension)
        throw InputError("matrix entry count does not match dimension");
    for (auto e : entries_)
        if (e >= field)
            throw InputError("matrix entry outside 0..p-1");
    if (determinant() == 0)
        throw InputError("matrix is singular");
}

Matrix Matrix::identity(unsigned field, unsigned dimension) {
    std::vector<std::uint8_t> entries(dimension * dimension, 0);
    for (unsigned i = 0; i < dimension; ++i)
        entries[i * dimension + i] = 1;
    return Matrix(field, dimension, std::move(entries));
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    Matrix out;
    out.field_ = field_;
    out.dimension_ = dimension_;
    out.entries_.assign(entries_.size(), 0);
    const unsigned n = dimension_;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            unsigned acc = 0;
            for (unsigned k = 0; k < n; ++k)
                acc += unsigned(entries_[i * n + k]) * rhs.entries_[k * n + j];
            out.entries_[i * n + j] = static_cast<std::uint8_t>(acc % field_);
        }
    return out;
}

Matrix Matrix::inverse() const {
    const unsigned n = dimension_;
    const unsigned p = field_;
    std::vector<unsigned> a(entries_.begin(), entries_.end());
    std::vector<unsigned> inv(n * n, 0);
    for (unsigned i = 0; i < n; ++i)
        inv[i * n + i] = 1;
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && a[pivot * n + col] == 0)
            ++pivot;
        if (pivot == n)
            throw InputError("matrix is singular");
        for (unsigned k = 0; k < n; ++k) {
            std::swap(a[col * n + k], a[pivot * n + k]);
            std::swap(inv[col * n + k], inv[pivot * n + k]);
        }
        unsigned scale = inverse_mod(a[col * n + col], p);
        for (unsigned k = 0; k < n; ++k) {
            a[col * n + k] = a[col * n + k] * scale % p;
            inv[col * n + k] = inv[col * n + k] * scale % p;
        }
        for (unsigned row = 0; row < n; ++row) {
            if (row == col || a[row * n + col] == 0)
                continue;
            unsigned f = a[row * n + col];
            for (unsigned k = 0; k < n; ++k) {
                a[row * n + k] = (a[row * n + k] + p * p - f * a[col * n + k] % p) % p;
                inv[row * n + k] = (inv[row * n + k] + p * p - f * inv[col * n + k] % p) % p;
            }
        }
    }
    Matrix out;
    out.field_ = field_;
    out.dimension_ = dimension_;
    out.entries_.assign(inv.begin(), inv.end());
    return out;
}

unsigned Matrix::determinant() const {
    const unsigned n = dimension_;
    const unsigned p = field_;
    std::vector<unsigned> a(entries_.begin(), entries_.end());
    unsigned det = 1;
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && a[pivot * n + col] == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            for (unsigned k = 0; k < n; ++k)
                std::swap(a[col * n + k], a[pivot * n + k]);
            det = (p - det) % p;
        }
        det = det * a[col * n + col] % p;
        unsigned inv = inverse_mod(a[col * n + col], p);
        for (unsigned row = col + 1; row < n; ++row) {
            unsigned f = a[row * n + col] * inv % p;
            for (unsigned k = col; k < n; ++k)
                a[row * n + k] = (a[row * n + k] + p * p - f * a[col * n + k] % p) % p;
        }
    }
    return det;
}

bool Matrix::is_identity() const noexcept {
    const unsigned n = dimension_;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (entries_[i * n + j] != (i == j ? 1 : 0))
                return false;
    return true;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (unsigned i = 0; i < dimension_; ++i) {
        os << (i ? ",[" : "[");
        for (unsigned j = 0; j < dimension_; ++j)
            os << (j ? "," : "") << at(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

GroupElement GroupElement::identity(const ElementShape& shape) {
    if (shape.kind == ElementKind::permutation)
        return Permutation::identity(shape.degree);
    return Matrix::identity(shape.field, shape.degree);
}

ElementKind GroupElement::kind() const noexcept {
    return std::holds_alternative<Permutation>(value_) ? ElementKind::permutation : ElementKind::matrix;
}

ElementShape GroupElement::shape() const {
    if (kind() == ElementKind::permutation)
        return {ElementKind::permutation, static_cast<unsigned>(permutation().degree()), 0};
    return {ElementKind::matrix, matrix().dimension(), matrix().field()};
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
    if (kind() == ElementKind::permutation)
        return permutation() * rhs.permutation();
    return matrix() * rhs.matrix();
}

GroupElement GroupElement::inverse() const {
    if (kind() == ElementKind::permutation)
        return permutation().inverse();
    return matrix().inverse();
}

bool GroupElement::is_identity() const noexcept {
    if (kind() == ElementKind::permutation)
        return permutation().is_identity();
    return matrix().is_identity();
}

std::string GroupElement::encode() const {
    std::string out;
    if (kind() == ElementKind::permutation) {
        const auto& images = permutation().images();
        if (images.size() <= 256) {
            out.resize(images.size());
            for (std::size_t i = 0; i < images.size(); ++i)
                out[i] = static_cast<char>(images[i]);
        } else {
            out.resize(2 * images.size());
            for (std::size_t i = 0; i < images.size(); ++i) {
                out[2 * i] = static_cast<char>(images[i] >> 8U);
                out[2 * i + 1] = static_cast<char>(images[i] & 0xFFU);
            }
        }
    } else {
        const auto& entries = matrix().entries();
        out.assign(entries.begin(), entries.end());
    }
    return out;
}

std::string GroupElement::to_string() const {
    return kind() == ElementKind::permutation ? permutation().cycle_string() : matrix().to_string();
}

} // namespace ff
