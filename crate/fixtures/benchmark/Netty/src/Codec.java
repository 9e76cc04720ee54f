package io.netty.handler.codec;

public class Codec {

    private Buffer buffer;

    int readableBytes() {
        return buffer.writerIndex() - buffer.readerIndex();
    }

    static int frameLength(int header, int max) {
        if (header > max) {
            return -1;
        }
        int length = header + 4;
        return length;
    }

    static boolean isChunked(String encoding) {
        boolean chunked = encoding == null ? false : encoding.equals("chunked");
        return chunked;
    }

    static int headerCount(int size, int limit) {
        int count = 0;
        int left = size;
        while (left > 0 && count < limit) {
            left = left - 8;
            count = count + 1;
        }
        return count;
    }

    static int statusClass(int code) {
        int c = code / 100;
        switch (c) {
            case 2:
                return 200;
            case 4:
                return 400;
            case 5:
                return 500;
            default:
                return 0;
        }
    }
}
