#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "warped/expr.hpp"

namespace warped {

// Streaming JSON writer with fixed key order and %.17g doubles, so that
// identical inputs always produce byte-identical output. (The vendored
// JSON library is used on the read side only; its double formatting is
// shortest-round-trip rather than a fixed digit count.)
class JsonWriter {
  public:
    JsonWriter& begin_object()
    {
        comma();
        out_ += '{';
        stack_.push_back(false);
        return *this;
    }
    JsonWriter& end_object()
    {
        out_ += '}';
        pop();
        return *this;
    }
    JsonWriter& begin_array()
    {
        comma();
        out_ += '[';
        stack_.push_back(false);
        return *this;
    }
    JsonWriter& end_array()
    {
        out_ += ']';
        pop();
        return *this;
    }
    JsonWriter& key(std::string_view k)
    {
        comma();
        append_string(k);
        out_ += ':';
        pending_value_ = true;
        return *this;
    }
    JsonWriter& value(double v)
    {
        comma();
        out_ += format_double(v);
        return *this;
    }
    JsonWriter& value(int v)
    {
        comma();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(long v)
    {
        comma();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(bool v)
    {
        comma();
        out_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(std::string_view v)
    {
        comma();
        append_string(v);
        return *this;
    }
    JsonWriter& value(const char* v)
    {
        return value(std::string_view(v));
    }
    JsonWriter& null()
    {
        comma();
        out_ += "null";
        return *this;
    }

    std::string str() &&
    {
        if (!stack_.empty())
            throw std::logic_error("unbalanced JSON writer");
        return std::move(out_);
    }

  private:
    void comma()
    {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!stack_.empty()) {
            if (stack_.back())
                out_ += ',';
            stack_.back() = true;
        }
    }
    void pop()
    {
        stack_.pop_back();
        if (!stack_.empty())
            stack_.back() = true;
        pending_value_ = false;
    }
    void append_string(std::string_view s)
    {
        out_ += '"';
        for (char c : s) {
            switch (c) {
            case '"':
                out_ += "\\\"";
                break;
            case '\\':
                out_ += "\\\\";
                break;
            case '\n':
                out_ += "\\n";
                break;
            case '\t':
                out_ += "\\t";
                break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out_ += buf;
                } else {
                    out_ += c;
                }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> stack_;
    bool pending_value_ = false;
};

} // namespace warped
