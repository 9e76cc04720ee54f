public class Worker {

    void run() {
        int n = 0;
        funcA();
        report(n);
    }
}
