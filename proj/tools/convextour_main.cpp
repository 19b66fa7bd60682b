#include <cstdio>

int main() {
    std::puts("convextour: not yet wired");
    return 1;
}
