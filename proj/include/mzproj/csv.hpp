#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace mzproj::csv {

// floating point: 17 significant digits round-trips every finite double
// exactly; integers verbatim
template <typename T>
std::string format(T v) {
    static_assert(std::is_arithmetic_v<T>);
    char buf[48];
    std::to_chars_result res{};
    if constexpr (std::is_floating_point_v<T>)
        res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    else
        res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Purely numeric RFC-4180-style table: comma separator, LF line endings,
// '.' decimal point, no quoting. The stream is opened in binary mode so the
// bytes on disk are exactly the bytes written on every platform.
class Writer {
public:
    explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("csv: cannot open " + path.string());
    }

    void header(std::initializer_list<const char*> names) {
        bool first = true;
        for (const char* name : names) {
            if (!first) out_ << ',';
            out_ << name;
            first = false;
        }
        out_ << '\n';
    }

    template <typename... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        auto emit = [&](const auto& cell) {
            if (!first) out_ << ',';
            out_ << format(cell);
            first = false;
        };
        (emit(cells), ...);
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (out_.fail()) throw std::runtime_error("csv: write failed on close");
    }

private:
    std::ofstream out_;
};

}  // namespace mzproj::csv
