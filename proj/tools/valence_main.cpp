#include <cstdio>
int main(){ std::puts("valence: not built yet"); return 12; }
