#include <qhmf/field.hpp>

#include <cstdio>

int main() {
    std::puts("qhmf: CLI not wired up yet");
    return 0;
}
