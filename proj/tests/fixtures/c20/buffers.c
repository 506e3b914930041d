#include <stdlib.h>

typedef struct { char *data; int len; int cap; } buffer;

void buffer_init(buffer *b) {
    b->data = NULL;
    b->len = 0;
    b->cap = 0;
}

int buffer_grow(buffer *b, int extra) {
    int want = b->len + extra;
    if (want <= b->cap) return 0;
    int cap = b->cap ? b->cap * 2 : 16;
    while (cap < want) cap *= 2;
    char *p = realloc(b->data, (size_t)cap);
    if (!p) return -1;
    b->data = p;
    b->cap = cap;
    return 0;
}

void buffer_free(buffer *b) {
    free(b->data);
    buffer_init(b);
}

int   buffer_len  ( const buffer *b )   {   return b->len;   }

double buffer_fill_ratio(const buffer *b) {
    return b->cap ? (double)b->len / b->cap : 0.0;
}
