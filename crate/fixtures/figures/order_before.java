public class Worker {

    void run() {
        funcA();
        int n = 0;
        report(n);
    }
}
